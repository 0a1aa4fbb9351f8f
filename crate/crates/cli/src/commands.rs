use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use nbkemeny::closed_forms::{closed_form, extremal_predicates, ArgmaxCheck, ExtremalReport};
use nbkemeny::families::FAMILIES;
use nbkemeny::graph6::read_corpus;
use nbkemeny::nb_vertex::nb_kemeny_pair;
use nbkemeny::report::{analyze_graph, AnalysisReport};
use nbkemeny::srw::srw_analyze;
use nbkemeny::survey::{
    condition_search as split_holders, figure_points, format_sig, survey_line, Figure, ScanFilter, ScanSummary,
    SurveyRecord,
};
use nbkemeny::{parse_graph6, write_graph6, FamilySpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::{AnalyzeArgs, CorpusArgs, FamilyOpts, FigureArg, Format, GlobalOpts};

type CmdResult = Result<bool, CliError>;

/// Closed form and pipeline must agree this closely for `families` to exit 0.
const FAMILY_AGREEMENT: f64 = 1e-8;

fn num(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn flag(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::new("io_error", format!("{}: {e}", path.display())))
}

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>, CliError> {
    read_corpus(BufReader::new(open(path)?))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| CliError::new("io_error", format!("{}: {e}", path.display())))
}

fn family_spec(opts: &FamilyOpts) -> Result<Option<FamilySpec>, CliError> {
    match &opts.family {
        Some(name) => Ok(Some(FamilySpec::parse(name, opts.params.as_deref().unwrap_or(""))?)),
        None => Ok(None),
    }
}

pub fn analyze(args: &AnalyzeArgs, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let format = g.format.unwrap_or(Format::Json);
    if args.emit_matrices && format == Format::Csv {
        return Err(CliError::new("invalid_input", "--emit-matrices needs --format json"));
    }
    let mut reports = Vec::new();
    if let Some(text) = &args.graph6 {
        reports.push(analyze_graph(&parse_graph6(text)?, None, g.tol, args.emit_matrices)?);
    } else if let Some(spec) = family_spec(&args.family)? {
        reports.push(analyze_graph(&spec.generate()?, Some(spec), g.tol, args.emit_matrices)?);
    } else if let Some(path) = &args.input {
        for (line, text) in read_lines(path)? {
            let graph =
                parse_graph6(&text).map_err(|e| CliError::new(e.code(), format!("{}:{line}: {e}", path.display())))?;
            reports.push(analyze_graph(&graph, None, g.tol, args.emit_matrices)?);
        }
    }
    let clean = reports.iter().all(|r| r.nb_error.is_none());
    match format {
        Format::Json if args.input.is_some() => write_json(out, &reports)?,
        Format::Json => write_json(out, &reports[0])?,
        Format::Csv => write_analysis_csv(out, &reports)?,
    }
    Ok(clean)
}

const ANALYSIS_HEADER: [&str; 16] = [
    "graph6",
    "family",
    "n",
    "m",
    "classification",
    "edge_transitive",
    "kemeny_srw",
    "kemeny_srw_trace",
    "kemeny_srw_spectral",
    "kemeny_nb_hitting",
    "kemeny_nb_trace",
    "kemeny_nb_edge",
    "gap",
    "condition_holds",
    "max_spread",
    "nb_error",
];

fn write_analysis_csv(out: &mut dyn Write, reports: &[AnalysisReport]) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(ANALYSIS_HEADER)?;
    for r in reports {
        w.write_record([
            r.graph6.clone(),
            r.family.map(|f| f.to_string()).unwrap_or_default(),
            r.n.to_string(),
            r.m.to_string(),
            r.classification.as_str().to_string(),
            flag(r.edge_transitive),
            format_sig(r.kemeny_srw),
            format_sig(r.kemeny_srw_trace),
            format_sig(r.kemeny_srw_spectral),
            num(r.kemeny_nb_hitting),
            num(r.kemeny_nb_trace),
            num(r.kemeny_nb_edge),
            num(r.gap),
            flag(r.condition.as_ref().map(|c| c.holds)),
            num(r.max_spread),
            r.nb_error.as_ref().map(|e| e.code.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Surveys every line of the corpus in parallel; records come back in input order.
fn survey(corpus: &CorpusArgs, tol: f64) -> Result<(usize, Vec<SurveyRecord>), CliError> {
    let lines = read_lines(&corpus.input)?;
    let filter = ScanFilter {
        min_degree: corpus.min_degree,
        allow_cycles: corpus.allow_cycles,
    };
    let records = lines
        .par_iter()
        .filter_map(|(line, text)| survey_line(*line, text, &filter, tol))
        .collect();
    Ok((lines.len(), records))
}

pub fn scan(corpus: &CorpusArgs, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let (read, records) = survey(corpus, g.tol)?;
    let summary = ScanSummary::from_records(read, &records);
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv_writer(&mut *out);
            w.write_record(SurveyRecord::CSV_HEADER)?;
            for r in &records {
                w.write_record(r.csv_fields())?;
            }
            w.flush()?;
            drop(w);
            for line in summary.footer_lines() {
                writeln!(out, "{line}")?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct ScanOutput<'a> {
                summary: &'a ScanSummary,
                records: &'a [SurveyRecord],
            }
            write_json(
                out,
                &ScanOutput {
                    summary: &summary,
                    records: &records,
                },
            )?;
        }
    }
    Ok(summary.clean())
}

pub fn condition_search(corpus: &CorpusArgs, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let (read, records) = survey(corpus, g.tol)?;
    let summary = ScanSummary::from_records(read, &records);
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["graph_id", "edge_transitive"])?;
            for r in records.iter().filter(|r| r.condition_holds == Some(true)) {
                w.write_record([r.graph_id.clone(), flag(r.edge_transitive)])?;
            }
            w.flush()?;
        }
        Format::Json => write_json(out, &split_holders(&records))?,
    }
    Ok(summary.clean())
}

pub fn figure_data(figure: FigureArg, corpus: &CorpusArgs, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let (read, records) = survey(corpus, g.tol)?;
    let summary = ScanSummary::from_records(read, &records);
    let figure = match figure {
        FigureArg::Fig2 => Figure::Fig2,
        FigureArg::Fig3 => Figure::Fig3,
    };
    let points = figure_points(&records, figure);
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["x", "y", "n"])?;
            for p in &points {
                w.write_record([format_sig(p.x), format_sig(p.y), p.n.to_string()])?;
            }
            w.flush()?;
        }
        Format::Json => write_json(out, &points)?,
    }
    Ok(summary.clean())
}

#[derive(Serialize)]
struct FamilyListing {
    family: &'static str,
    params: &'static [&'static str],
}

#[derive(Serialize)]
struct FamilyEvaluation {
    family: FamilySpec,
    graph6: String,
    n: usize,
    m: usize,
    nb_formula: Option<&'static str>,
    nb_closed_form: Option<f64>,
    nb_numeric: Option<f64>,
    srw_formula: Option<&'static str>,
    srw_closed_form: Option<f64>,
    srw_numeric: Option<f64>,
    agree: bool,
}

fn agree(closed: Option<f64>, numeric: Option<f64>) -> bool {
    match (closed, numeric) {
        (Some(c), Some(v)) => (c - v).abs() <= FAMILY_AGREEMENT,
        (Some(_), None) => false,
        (None, _) => true,
    }
}

pub fn families(opts: &FamilyOpts, g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let format = g.format.unwrap_or(Format::Json);
    let Some(spec) = family_spec(opts)? else {
        let listing: Vec<FamilyListing> = FAMILIES
            .iter()
            .map(|&(family, params)| FamilyListing { family, params })
            .collect();
        match format {
            Format::Json => write_json(out, &listing)?,
            Format::Csv => {
                let mut w = csv_writer(out);
                w.write_record(["family", "params"])?;
                for f in &listing {
                    w.write_record([f.family.to_string(), f.params.join(";")])?;
                }
                w.flush()?;
            }
        }
        return Ok(true);
    };
    let graph = spec.generate()?;
    let cf = closed_form(&spec)?;
    let nb_numeric = nb_kemeny_pair(&graph).ok().map(|(hitting, _)| hitting);
    let srw_numeric = srw_analyze(&graph).ok().map(|b| b.kemeny_hitting);
    let eval = FamilyEvaluation {
        family: spec,
        graph6: write_graph6(&graph)?,
        n: graph.n(),
        m: graph.m(),
        nb_formula: cf.nb_formula,
        nb_closed_form: cf.nb_value,
        nb_numeric,
        srw_formula: cf.srw_formula,
        srw_closed_form: cf.srw_value,
        srw_numeric,
        agree: agree(cf.nb_value, nb_numeric) && agree(cf.srw_value, srw_numeric),
    };
    match format {
        Format::Json => write_json(out, &eval)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "family",
                "graph6",
                "n",
                "m",
                "nb_formula",
                "nb_closed_form",
                "nb_numeric",
                "srw_formula",
                "srw_closed_form",
                "srw_numeric",
                "agree",
            ])?;
            w.write_record([
                spec.to_string(),
                eval.graph6.clone(),
                eval.n.to_string(),
                eval.m.to_string(),
                eval.nb_formula.unwrap_or_default().to_string(),
                num(eval.nb_closed_form),
                num(eval.nb_numeric),
                eval.srw_formula.unwrap_or_default().to_string(),
                num(eval.srw_closed_form),
                num(eval.srw_numeric),
                eval.agree.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(eval.agree)
}

fn argmax_row(n: usize, check: &str, a: &ArgmaxCheck) -> [String; 7] {
    [
        n.to_string(),
        check.to_string(),
        a.holds.to_string(),
        a.expected.to_string(),
        a.found.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"),
        format_sig(a.best_value),
        format_sig(a.expected_value),
    ]
}

pub fn extremal_check(ns: &[usize], g: &GlobalOpts, out: &mut dyn Write) -> CmdResult {
    let reports: Vec<ExtremalReport> = ns.iter().map(|&n| extremal_predicates(n)).collect::<Result<_, _>>()?;
    match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "n",
                "check",
                "holds",
                "expected",
                "found",
                "best_value",
                "expected_value",
            ])?;
            for r in &reports {
                if let Some(c) = &r.chord_below_complete {
                    w.write_record([
                        r.n.to_string(),
                        "chord_below_complete".into(),
                        c.holds.to_string(),
                        FamilySpec::CycleWithChord { n: r.n, k: 3 }.to_string(),
                        String::new(),
                        format_sig(c.chord_value),
                        format_sig(c.complete_value),
                    ])?;
                }
                if let Some(a) = &r.nb_barbell_argmax {
                    w.write_record(argmax_row(r.n, "nb_barbell_argmax", a))?;
                }
                if let Some(a) = &r.srw_barbell_argmax {
                    w.write_record(argmax_row(r.n, "srw_barbell_argmax", a))?;
                }
            }
            w.flush()?;
        }
    }
    Ok(reports.iter().all(ExtremalReport::all_hold))
}
