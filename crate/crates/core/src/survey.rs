//! One-row-per-graph survey records, scan summaries and figure data.

use serde::Serialize;

use crate::error::Error;
use crate::graph::{validate_for_nbrw, Graph, NbrwClass};
use crate::graph6::parse_graph6;
use crate::nb_vertex::nb_analyze;
use crate::srw::srw_analyze;
use crate::symmetry::{edge_transitive, MAX_SYMMETRY_VERTICES};

/// Trace form exceeding hitting form by more than this counts as a violation.
pub const TRACE_VIOLATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `tr(Z_v) - 1 <= pi^T M_v pi` fails.
    TraceLeHitting,
    /// `pi^T M_v pi < K(SRW)` fails.
    NbLtSrw,
}

impl Violation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Violation::TraceLeHitting => "trace_le_hitting",
            Violation::NbLtSrw => "nb_lt_srw",
        }
    }
}

/// Which graphs a scan admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanFilter {
    pub min_degree: usize,
    pub allow_cycles: bool,
}

impl Default for ScanFilter {
    fn default() -> Self {
        ScanFilter {
            min_degree: 2,
            allow_cycles: false,
        }
    }
}

impl ScanFilter {
    /// Disconnected graphs are never admitted.
    pub fn admits(&self, g: &Graph) -> bool {
        g.is_connected() && g.min_degree() >= self.min_degree && (self.allow_cycles || !g.is_cycle())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRecord {
    /// 1-based line in the corpus.
    pub line: usize,
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub classification: Option<NbrwClass>,
    pub kemeny_srw: Option<f64>,
    pub kemeny_nb_hitting: Option<f64>,
    pub kemeny_nb_trace: Option<f64>,
    pub gap: Option<f64>,
    pub condition_holds: Option<bool>,
    pub max_spread: Option<f64>,
    pub edge_transitive: Option<bool>,
    pub violations: Vec<Violation>,
    pub error: Option<String>,
}

impl SurveyRecord {
    fn blank(line: usize, graph_id: &str, n: usize, m: usize) -> Self {
        SurveyRecord {
            line,
            graph_id: graph_id.to_string(),
            n,
            m,
            classification: None,
            kemeny_srw: None,
            kemeny_nb_hitting: None,
            kemeny_nb_trace: None,
            gap: None,
            condition_holds: None,
            max_spread: None,
            edge_transitive: None,
            violations: Vec::new(),
            error: None,
        }
    }

    fn failed(line: usize, graph_id: &str, n: usize, m: usize, err: &Error) -> Self {
        SurveyRecord {
            error: Some(format!("{}: {err}", err.code())),
            ..Self::blank(line, graph_id, n, m)
        }
    }

    pub const CSV_HEADER: [&'static str; 13] = [
        "graph_id",
        "n",
        "m",
        "classification",
        "kemeny_srw",
        "kemeny_nb_hitting",
        "kemeny_nb_trace",
        "gap",
        "condition_holds",
        "max_spread",
        "edge_transitive",
        "violations",
        "error",
    ];

    pub fn csv_fields(&self) -> Vec<String> {
        let num = |x: Option<f64>| x.map(format_sig).unwrap_or_default();
        let flag = |x: Option<bool>| x.map(|b| b.to_string()).unwrap_or_default();
        vec![
            self.graph_id.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.classification.map(|c| c.as_str().to_string()).unwrap_or_default(),
            num(self.kemeny_srw),
            num(self.kemeny_nb_hitting),
            num(self.kemeny_nb_trace),
            num(self.gap),
            flag(self.condition_holds),
            num(self.max_spread),
            flag(self.edge_transitive),
            self.violations
                .iter()
                .map(Violation::as_str)
                .collect::<Vec<_>>()
                .join(";"),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

/// Analyses one graph. Returns `None` when the filter rejects it.
pub fn survey_graph(line: usize, graph_id: &str, g: &Graph, filter: &ScanFilter, tol: f64) -> Option<SurveyRecord> {
    if !filter.admits(g) {
        return None;
    }
    let classification = validate_for_nbrw(g);
    let srw = match srw_analyze(g) {
        Ok(b) => b,
        Err(e) => return Some(SurveyRecord::failed(line, graph_id, g.n(), g.m(), &e)),
    };
    let mut rec = SurveyRecord {
        classification: Some(classification),
        kemeny_srw: Some(srw.kemeny_hitting),
        ..SurveyRecord::blank(line, graph_id, g.n(), g.m())
    };
    if g.n() <= MAX_SYMMETRY_VERTICES {
        rec.edge_transitive = edge_transitive(g).ok();
    }
    if matches!(classification, NbrwClass::Ok | NbrwClass::IsCycle) {
        match nb_analyze(g, tol) {
            Ok(nb) => {
                rec.kemeny_nb_hitting = Some(nb.kemeny_hitting);
                rec.kemeny_nb_trace = nb.kemeny_trace;
                rec.gap = nb.gap;
                rec.condition_holds = Some(nb.condition.holds);
                rec.max_spread = Some(nb.condition.max_spread());
                if let Some(trace) = nb.kemeny_trace {
                    if trace > nb.kemeny_hitting + TRACE_VIOLATION_TOLERANCE {
                        rec.violations.push(Violation::TraceLeHitting);
                    }
                }
                if nb.kemeny_hitting >= srw.kemeny_hitting {
                    rec.violations.push(Violation::NbLtSrw);
                }
            }
            Err(e) => rec.error = Some(format!("{}: {e}", e.code())),
        }
    }
    Some(rec)
}

/// Parses and analyses one corpus line. Parse failures become error records.
pub fn survey_line(line: usize, text: &str, filter: &ScanFilter, tol: f64) -> Option<SurveyRecord> {
    match parse_graph6(text) {
        Ok(g) => survey_graph(line, text, &g, filter, tol),
        Err(e) => Some(SurveyRecord::failed(line, text, 0, 0, &e)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub graphs_read: usize,
    pub records: usize,
    pub errors: usize,
    pub condition_holders: usize,
    pub condition_holders_not_edge_transitive: usize,
    pub max_abs_gap: f64,
    pub violations_trace_le_hitting: usize,
    pub violations_nb_lt_srw: usize,
}

impl ScanSummary {
    pub fn from_records(graphs_read: usize, records: &[SurveyRecord]) -> Self {
        let count = |v: Violation| records.iter().filter(|r| r.violations.contains(&v)).count();
        ScanSummary {
            graphs_read,
            records: records.len(),
            errors: records.iter().filter(|r| r.error.is_some()).count(),
            condition_holders: records.iter().filter(|r| r.condition_holds == Some(true)).count(),
            condition_holders_not_edge_transitive: records
                .iter()
                .filter(|r| r.condition_holds == Some(true) && r.edge_transitive == Some(false))
                .count(),
            max_abs_gap: records.iter().filter_map(|r| r.gap).map(f64::abs).fold(0.0, f64::max),
            violations_trace_le_hitting: count(Violation::TraceLeHitting),
            violations_nb_lt_srw: count(Violation::NbLtSrw),
        }
    }

    /// True when there are no violations and no per-graph errors.
    pub fn clean(&self) -> bool {
        self.errors == 0 && self.violations_trace_le_hitting == 0 && self.violations_nb_lt_srw == 0
    }

    /// `# key=value` lines appended after the CSV body.
    pub fn footer_lines(&self) -> Vec<String> {
        vec![
            format!("# graphs_read={}", self.graphs_read),
            format!("# records={}", self.records),
            format!("# errors={}", self.errors),
            format!("# condition_holders={}", self.condition_holders),
            format!(
                "# condition_holders_not_edge_transitive={}",
                self.condition_holders_not_edge_transitive
            ),
            format!("# max_abs_gap={}", format_sig(self.max_abs_gap)),
            format!("# violations_trace_le_hitting={}", self.violations_trace_le_hitting),
            format!("# violations_nb_lt_srw={}", self.violations_nb_lt_srw),
        ]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConditionSearch {
    pub edge_transitive: Vec<String>,
    pub not_edge_transitive: Vec<String>,
    /// Holders whose symmetry could not be decided (vertex budget exceeded).
    pub undetermined: Vec<String>,
}

pub fn condition_search(records: &[SurveyRecord]) -> ConditionSearch {
    let mut out = ConditionSearch::default();
    for r in records.iter().filter(|r| r.condition_holds == Some(true)) {
        let bucket = match r.edge_transitive {
            Some(true) => &mut out.edge_transitive,
            Some(false) => &mut out.not_edge_transitive,
            None => &mut out.undetermined,
        };
        bucket.push(r.graph_id.clone());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// x = trace form, y = hitting form.
    Fig2,
    /// x = simple-walk constant, y = hitting form.
    Fig3,
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            other => Err(Error::InvalidInput(format!(
                "unknown figure '{other}', expected fig2 or fig3"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigurePoint {
    pub x: f64,
    pub y: f64,
    pub n: usize,
}

/// Records lacking either coordinate are skipped.
pub fn figure_points(records: &[SurveyRecord], figure: Figure) -> Vec<FigurePoint> {
    records
        .iter()
        .filter_map(|r| {
            let x = match figure {
                Figure::Fig2 => r.kemeny_nb_trace?,
                Figure::Fig3 => r.kemeny_srw?,
            };
            Some(FigurePoint {
                x,
                y: r.kemeny_nb_hitting?,
                n: r.n,
            })
        })
        .collect()
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation outside `1e-4 <= |x| < 1e12` (after rounding).
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
