use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbkemeny"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn stderr_code(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("json error on stderr");
    v["error"]["code"].as_str().unwrap().to_string()
}

fn close(v: &Value, expected: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() < 1e-8
}

fn write_corpus(lines: &[&str]) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

#[test]
fn analyze_complete_graph() {
    let o = run(&["analyze", "C~"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(close(&v["kemeny_nb_hitting"], 1.75));
    assert!(close(&v["kemeny_srw"], 2.25));
    assert!(close(&v["kemeny_nb_trace"], 1.75));
    assert_eq!(v["classification"], "OK");
    assert_eq!(v["condition"]["holds"], true);
    assert!(v["matrices"].is_null());
}

#[test]
fn analyze_key_order_is_stable() {
    let text = stdout(&run(&["analyze", "C~"]));
    let keys = [
        "\"graph6\"",
        "\"n\"",
        "\"kemeny_srw\"",
        "\"kemeny_nb_hitting\"",
        "\"condition\"",
        "\"matrices\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(text, stdout(&run(&["analyze", "C~"])));
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn analyze_family() {
    let o = run(&["analyze", "--family", "pinwheel", "--params", "n=4,k=3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(close(&v["kemeny_srw"], 12.5));
    assert_eq!(v["family"]["family"], "pinwheel");
    let nb = v["closed_form"]["nb_value"].as_f64().unwrap();
    assert!(close(&v["kemeny_nb_hitting"], nb));
}

#[test]
fn analyze_cycle_reports_missing_trace_form() {
    let o = run(&["analyze", "Dhc"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["classification"], "IsCycle");
    assert!(close(&v["kemeny_nb_hitting"], 2.0));
    assert!(v["kemeny_nb_trace"].is_null());
    assert_eq!(v["trace_error"]["code"], "fundamental_matrix_undefined");
}

#[test]
fn analyze_matrices() {
    let v = json(&run(&["analyze", "C~", "--emit-matrices"]));
    let m = &v["matrices"];
    assert_eq!(m["arcs"].as_array().unwrap().len(), 12);
    assert_eq!(m["nb"]["pnb"].as_array().unwrap().len(), 12);
    assert_eq!(m["srw"]["z"].as_array().unwrap().len(), 4);
    let o = run(&["analyze", "C~", "--emit-matrices", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "invalid_input");
}

#[test]
fn analyze_domain_and_parse_errors() {
    // Triangle with a pendant vertex.
    let o = run(&["analyze", "Cx"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["nb_error"]["code"], "degree_one_vertex");

    let o = run(&["analyze", "!!"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "parse_error");

    let o = run(&["analyze", "C?"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "not_connected");

    let o = run(&["analyze", "--family", "complete_bipartite", "--params", "p=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "invalid_family_spec");

    let o = run(&["analyze", "--input", "/nonexistent/corpus.g6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "io_error");
}

#[test]
fn analyze_input_file_gives_array() {
    let f = write_corpus(&["C~", "Dhc"]);
    let o = run(&["analyze", "--input", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 2);
    let o = run(&["analyze", "--input", f.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn scan_n6_has_no_violations() {
    let path = corpus("connected_mindeg2_n6.g6");
    let o = run(&["scan", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "graph_id,n,m,classification,kemeny_srw,kemeny_nb_hitting,kemeny_nb_trace,gap,condition_holds,max_spread,edge_transitive,violations,error"
    );
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    // C6 is the one cycle in the corpus and the default filter drops it.
    assert_eq!(rows.len(), 60);
    assert!(text.contains("# violations_trace_le_hitting=0\n"));
    assert!(text.contains("# violations_nb_lt_srw=0\n"));
    assert!(text.contains("# graphs_read=61\n"));
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 13);
        let gap: f64 = fields[7].parse().unwrap();
        let hitting: f64 = fields[5].parse().unwrap();
        let trace: f64 = fields[6].parse().unwrap();
        assert!((hitting - trace - gap).abs() < 1e-8);
        assert_eq!(fields[11], "");
    }
}

#[test]
fn scan_is_deterministic_across_job_counts() {
    let path = corpus("connected_mindeg2_n7.g6");
    let p = path.to_str().unwrap();
    let a = run(&["scan", "--input", p, "--jobs", "1"]);
    let b = run(&["scan", "--input", p, "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_keeps_cycles_when_asked() {
    let f = write_corpus(&["EhEG", "C~"]);
    let p = f.path().to_str().unwrap();
    let text = stdout(&run(&["scan", "--input", p]));
    assert!(!text.contains("EhEG"));
    let o = run(&["scan", "--input", p, "--allow-cycles"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("EhEG,")).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[3], "IsCycle");
    assert_eq!(fields[5], "2.5");
    assert_eq!(fields[6], "");
    assert_eq!(fields[7], "");
}

#[test]
fn scan_records_bad_lines_and_continues() {
    let f = write_corpus(&["C~", "not graph6 !", "Dhc"]);
    let o = run(&[
        "scan",
        "--input",
        f.path().to_str().unwrap(),
        "--min-degree",
        "0",
        "--allow-cycles",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("# errors=1\n"));
    assert!(text.contains("C~,"));
    assert!(text.contains("Dhc,"));
    let o = run(&["scan", "--input", "/nonexistent.g6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_code(&o), "io_error");
}

#[test]
fn scan_json_has_summary_and_records() {
    let path = corpus("connected_mindeg2_n5.g6");
    let v = json(&run(&["scan", "--input", path.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["summary"]["records"], 10);
    assert_eq!(v["records"].as_array().unwrap().len(), 10);
    assert_eq!(v["records"][0]["graph_id"], "DFw");
}

#[test]
fn condition_search_small_corpora() {
    for n in 4..=7 {
        let path = corpus(&format!("connected_mindeg2_n{n}.g6"));
        let o = run(&[
            "condition-search",
            "--input",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert!(v["not_edge_transitive"].as_array().unwrap().is_empty(), "n = {n}");
        assert!(!v["edge_transitive"].as_array().unwrap().is_empty(), "n = {n}");
    }
}

#[test]
fn condition_search_n8_finds_two() {
    let path = corpus("connected_mindeg2_n8.g6");
    let o = run(&["condition-search", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let not_et: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with(",false"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(not_et, ["G?rFf_", "GCOf~w"]);
}

#[test]
fn figure_data() {
    let path = corpus("connected_mindeg2_n6.g6");
    let p = path.to_str().unwrap();
    let fig3 = stdout(&run(&["figure-data", "fig3", "--input", p]));
    assert_eq!(fig3.lines().next(), Some("x,y,n"));
    for l in fig3.lines().skip(1) {
        let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[1] < f[0]);
    }
    let fig2 = json(&run(&["figure-data", "fig2", "--input", p, "--format", "json"]));
    for pt in fig2.as_array().unwrap() {
        assert!(pt["y"].as_f64().unwrap() >= pt["x"].as_f64().unwrap() - 1e-8);
    }
    let k4 = stdout(&run(&[
        "figure-data",
        "fig3",
        "--input",
        corpus("connected_mindeg2_n4.g6").to_str().unwrap(),
    ]));
    assert!(k4.lines().any(|l| l == "2.25,1.75,4"));
}

#[test]
fn families_listing_and_evaluation() {
    let v = json(&run(&["families"]));
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["family"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 6);
    assert!(names.contains(&"cycle_barbell"));

    let o = run(&["families", "--family", "complete_bipartite", "--params", "p=2,q=3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["agree"], true);
    assert!(close(&v["srw_numeric"], 3.5));

    let o = run(&[
        "families",
        "--family",
        "cycle_barbell",
        "--params",
        "k=2,a=5,b=5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn extremal_check_defaults() {
    let o = run(&["extremal-check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["n"], 10);
    assert_eq!(reports[0]["nb_barbell_argmax"]["holds"], true);
    assert_eq!(reports[1]["srw_barbell_argmax"]["expected"]["k"], 8);
    let csv = stdout(&run(&["extremal-check", "--n", "10", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));
}
