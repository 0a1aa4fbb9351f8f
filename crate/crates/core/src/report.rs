//! Per-graph analysis document shared by the command line and the browser demo.

use serde::Serialize;

use crate::closed_forms::{closed_form, ClosedFormResult};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{validate_for_nbrw, Graph, NbrwClass};
use crate::graph6::write_graph6;
use crate::nb_vertex::{nb_analyze, ConditionReport, NbBundle};
use crate::numerics::DenseMatrix;
use crate::srw::{srw_analyze, SrwBundle};
use crate::symmetry::{edge_transitive, MAX_SYMMETRY_VERTICES};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        ErrorInfo {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SrwMatrices {
    pub p: DenseMatrix,
    pub z: DenseMatrix,
    pub m: DenseMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct NbMatrices {
    pub pnb: DenseMatrix,
    pub z_e: Option<DenseMatrix>,
    pub mev: DenseMatrix,
    pub mv: DenseMatrix,
    pub r: DenseMatrix,
    pub zv: Option<DenseMatrix>,
    pub y: DenseMatrix,
    pub f: DenseMatrix,
    pub e: Option<DenseMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Matrices {
    /// Arcs `(tail, head)` in the row order of every edge-space matrix.
    pub arcs: Vec<(usize, usize)>,
    pub srw: SrwMatrices,
    pub nb: Option<NbMatrices>,
}

/// Field order here is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub graph6: String,
    pub family: Option<FamilySpec>,
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    pub classification: NbrwClass,
    /// Absent above the automorphism search budget.
    pub edge_transitive: Option<bool>,
    pub kemeny_srw: f64,
    pub kemeny_srw_trace: f64,
    pub kemeny_srw_spectral: f64,
    pub kemeny_nb_hitting: Option<f64>,
    pub kemeny_nb_trace: Option<f64>,
    pub kemeny_nb_edge: Option<f64>,
    pub gap: Option<f64>,
    /// Why the trace form is missing while the hitting form exists (cycles).
    pub trace_error: Option<ErrorInfo>,
    /// Why the non-backtracking quantities are missing altogether.
    pub nb_error: Option<ErrorInfo>,
    pub condition: Option<ConditionReport>,
    pub max_spread: Option<f64>,
    pub stationary: Vec<f64>,
    pub srw_return_times: Vec<f64>,
    pub nb_return_times: Option<Vec<f64>>,
    pub closed_form: Option<ClosedFormResult>,
    pub matrices: Option<Matrices>,
}

/// Runs both pipelines. Fails only when the simple walk itself is undefined
/// (disconnected or edgeless); non-backtracking failures land in `nb_error`.
pub fn analyze_graph(g: &Graph, family: Option<FamilySpec>, tol: f64, emit_matrices: bool) -> Result<AnalysisReport> {
    let srw = srw_analyze(g)?;
    let classification = validate_for_nbrw(g);
    let nb = nb_analyze(g, tol);
    let closed = family.as_ref().map(closed_form).transpose()?;
    let edge_transitive = if g.n() <= MAX_SYMMETRY_VERTICES {
        edge_transitive(g).ok()
    } else {
        None
    };
    let matrices = emit_matrices.then(|| matrices(g, &srw, nb.as_ref().ok()));
    let mut report = AnalysisReport {
        graph6: write_graph6(g)?,
        family,
        n: g.n(),
        m: g.m(),
        degrees: g.degrees().to_vec(),
        classification,
        edge_transitive,
        kemeny_srw: srw.kemeny_hitting,
        kemeny_srw_trace: srw.kemeny_trace,
        kemeny_srw_spectral: srw.kemeny_spectral,
        kemeny_nb_hitting: None,
        kemeny_nb_trace: None,
        kemeny_nb_edge: None,
        gap: None,
        trace_error: None,
        nb_error: None,
        condition: None,
        max_spread: None,
        srw_return_times: srw.return_times(),
        stationary: srw.pi,
        nb_return_times: None,
        closed_form: closed,
        matrices,
    };
    match nb {
        Ok(b) => {
            report.kemeny_nb_hitting = Some(b.kemeny_hitting);
            report.kemeny_nb_trace = b.kemeny_trace;
            report.kemeny_nb_edge = b.kemeny_edge;
            report.gap = b.gap;
            if b.kemeny_trace.is_none() {
                report.trace_error = Some((&Error::FundamentalMatrixUndefined).into());
            }
            report.max_spread = Some(b.condition.max_spread());
            report.nb_return_times = Some(b.r.diagonal());
            report.condition = Some(b.condition);
        }
        Err(e) => report.nb_error = Some((&e).into()),
    }
    Ok(report)
}

fn matrices(g: &Graph, srw: &SrwBundle, nb: Option<&NbBundle>) -> Matrices {
    let es = g.edge_space();
    Matrices {
        arcs: es.arcs().to_vec(),
        srw: SrwMatrices {
            p: srw.p.clone(),
            z: srw.z.clone(),
            m: srw.m.clone(),
        },
        nb: nb.map(|b| NbMatrices {
            pnb: b.ops.pnb.clone(),
            z_e: b.z_e.clone(),
            mev: b.mev.clone(),
            mv: b.mv.clone(),
            r: b.r.clone(),
            zv: b.zv.clone(),
            y: b.y.clone(),
            f: b.f.clone(),
            e: b.e.clone(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::parse_graph6;

    #[test]
    fn complete_graph_report() {
        let r = analyze_graph(&parse_graph6("C~").unwrap(), None, 1e-8, false).unwrap();
        assert!((r.kemeny_nb_hitting.unwrap() - 1.75).abs() < 1e-10);
        assert!((r.kemeny_srw - 2.25).abs() < 1e-10);
        assert_eq!(r.edge_transitive, Some(true));
        assert!(r.condition.unwrap().holds);
        assert!(r.matrices.is_none());
    }

    #[test]
    fn cycle_report_has_trace_error() {
        let r = analyze_graph(&parse_graph6("Dhc").unwrap(), None, 1e-8, true).unwrap();
        assert_eq!(r.classification, NbrwClass::IsCycle);
        assert!((r.kemeny_nb_hitting.unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(r.kemeny_nb_trace, None);
        assert_eq!(r.trace_error.unwrap().code, "fundamental_matrix_undefined");
        let m = r.matrices.unwrap();
        assert!(m.nb.unwrap().z_e.is_none());
    }

    #[test]
    fn pendant_vertex_keeps_srw_part() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let r = analyze_graph(&g, None, 1e-8, false).unwrap();
        assert_eq!(r.nb_error.unwrap().code, "degree_one_vertex");
        assert!(r.kemeny_srw > 0.0);
    }

    #[test]
    fn family_report_carries_closed_form() {
        let spec = FamilySpec::Pinwheel { n: 4, k: 3 };
        let r = analyze_graph(&spec.generate().unwrap(), Some(spec), 1e-8, false).unwrap();
        assert!((r.kemeny_srw - 12.5).abs() < 1e-9);
        let cf = r.closed_form.unwrap();
        assert!((cf.nb_value.unwrap() - r.kemeny_nb_hitting.unwrap()).abs() < 1e-8);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(analyze_graph(&g, None, 1e-8, false).unwrap_err(), Error::NotConnected);
    }
}
