//! Vertex-space quantities of the non-backtracking walk: hitting and return
//! times, the projected fundamental matrix, both Kemeny constants, k-step
//! transitions, the locally uniform return time check and the gap matrices
//! that account for the difference between the two Kemeny constants.
//!
//! Hitting times follow the vertex-step convention: a walk started on arc
//! `(i, j)` is at `i` at time 0 and at `j` at time 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{require_nb_walkable, EdgeSpace, Graph};
use crate::nb_edge::{averaging_projection, build_operators, nb_edge_fundamental, nb_edge_kemeny, NbEdgeOperators};
use crate::numerics::{solve, trace, DenseMatrix};

/// Default absolute tolerance on the spread of conditional return times.
pub const CONDITION_TOLERANCE: f64 = 1e-8;

/// `2m x n` matrix of expected hitting times from arc `(i, j)` to vertex `v`.
///
/// One linear solve per target over the arcs whose head is not `v`.
pub fn nb_hitting_mev(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators) -> Result<DenseMatrix> {
    let len = es.len();
    let mut mev = DenseMatrix::zeros(len, g.n());
    for v in 0..g.n() {
        let free: Vec<usize> = (0..len).filter(|&e| es.head(e) != v).collect();
        let a = DenseMatrix::identity(free.len()).sub(&ops.pnb.principal_submatrix(&free));
        let h = solve(&a, &DenseMatrix::filled(free.len(), 1, 1.0)).map_err(|e| match e {
            Error::SingularMatrix { .. } => Error::UnreachableTarget { target: v },
            other => other,
        })?;
        for (k, &e) in free.iter().enumerate() {
            if es.tail(e) != v {
                mev[(e, v)] = 1.0 + h[(k, 0)];
            }
        }
        for e in 0..len {
            if es.head(e) == v {
                mev[(e, v)] = 1.0;
            }
        }
    }
    Ok(mev)
}

/// `D^{-1} T M_ev`.
pub fn nb_hitting_mv(g: &Graph, es: &EdgeSpace, mev: &DenseMatrix) -> DenseMatrix {
    let mut mv = averaging_projection(g, es).matmul(mev);
    // Exact zeros on the diagonal: every averaged entry is zero already.
    for v in 0..g.n() {
        mv[(v, v)] = 0.0;
    }
    mv
}

/// Expected return time to `i` given the first step goes along `arc`
/// (whose tail is `i`): one step out, then the hitting time back to `i`
/// from wherever the walk continues. `p_mev` is `P_nb M_ev`.
fn conditional_return_time(p_mev: &DenseMatrix, arc: usize, i: usize) -> f64 {
    1.0 + p_mev[(arc, i)]
}

/// `diag(J + D^{-1} T P_nb M_ev)`.
pub fn nb_return_times(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, mev: &DenseMatrix) -> DenseMatrix {
    let p_mev = ops.pnb.matmul(mev);
    let r: Vec<f64> = (0..g.n())
        .map(|i| {
            let arcs = es.out_arcs(i);
            arcs.clone().map(|e| conditional_return_time(&p_mev, e, i)).sum::<f64>() / arcs.len() as f64
        })
        .collect();
    DenseMatrix::from_diagonal(&r)
}

/// `D^{-1} T Z_e T^T`.
pub fn vertex_fundamental(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, z_e: &DenseMatrix) -> DenseMatrix {
    averaging_projection(g, es).matmul(z_e).matmul(&ops.t.transpose())
}

/// `I + D^{-1} T Z_e S - W_v`, equal to [`vertex_fundamental`].
pub fn vertex_fundamental_lift(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, z_e: &DenseMatrix) -> DenseMatrix {
    let n = g.n();
    let w_v = DenseMatrix::outer(&vec![1.0; n], &g.stationary());
    DenseMatrix::identity(n)
        .add(&averaging_projection(g, es).matmul(z_e).matmul(&ops.s))
        .sub(&w_v)
}

/// `n x n` distribution of the vertex reached after `k >= 1` non-backtracking
/// steps from a uniformly chosen first arc: `D^{-1} T P_nb^{k-1} S`.
pub fn k_step_transition(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, k: u32) -> Result<DenseMatrix> {
    if k == 0 {
        return Err(Error::InvalidParam("k must be at least 1".into()));
    }
    Ok(averaging_projection(g, es).matmul(&ops.pnb.pow(k - 1)).matmul(&ops.s))
}

/// The same matrix through the projection form `D^{-1} T P_nb^k T^T`.
pub fn k_step_transition_projected(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, k: u32) -> Result<DenseMatrix> {
    if k == 0 {
        return Err(Error::InvalidParam("k must be at least 1".into()));
    }
    Ok(averaging_projection(g, es)
        .matmul(&ops.pnb.pow(k))
        .matmul(&ops.t.transpose()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Per vertex, max minus min of the conditional return time over first steps.
    pub spread: Vec<f64>,
    pub tolerance: f64,
}

impl ConditionReport {
    pub fn max_spread(&self) -> f64 {
        self.spread.iter().cloned().fold(0.0, f64::max)
    }
}

/// Checks whether the expected return time to each vertex is independent of
/// the first step.
pub fn condition_check(
    g: &Graph,
    es: &EdgeSpace,
    ops: &NbEdgeOperators,
    mev: &DenseMatrix,
    tol: f64,
) -> ConditionReport {
    let p_mev = ops.pnb.matmul(mev);
    let spread: Vec<f64> = (0..g.n())
        .map(|i| {
            let times = es.out_arcs(i).map(|e| conditional_return_time(&p_mev, e, i));
            let (lo, hi) = times.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)));
            if lo.is_finite() {
                hi - lo
            } else {
                0.0
            }
        })
        .collect();
    let holds = spread.iter().all(|&s| s <= tol);
    ConditionReport {
        holds,
        spread,
        tolerance: tol,
    }
}

/// `Y`, holding the conditional return times at `((i, j), i)`.
pub fn return_time_matrix(g: &Graph, es: &EdgeSpace, ops: &NbEdgeOperators, mev: &DenseMatrix) -> DenseMatrix {
    let p_mev = ops.pnb.matmul(mev);
    let mut y = DenseMatrix::zeros(es.len(), g.n());
    for e in 0..es.len() {
        let i = es.tail(e);
        y[(e, i)] = conditional_return_time(&p_mev, e, i);
    }
    y
}

#[derive(Debug, Clone, Serialize)]
pub struct GapMatrices {
    pub y: DenseMatrix,
    /// `-(tau - P_nb) Y`.
    pub f: DenseMatrix,
    /// `D^{-1} T Z_e D_e^{-1} F`.
    pub e: DenseMatrix,
    /// `tr(D E) / 2m`, the hitting-form minus trace-form Kemeny constant.
    pub gap: f64,
}

pub fn gap_matrices(
    g: &Graph,
    es: &EdgeSpace,
    ops: &NbEdgeOperators,
    z_e: &DenseMatrix,
    mev: &DenseMatrix,
) -> GapMatrices {
    let y = return_time_matrix(g, es, ops, mev);
    let f = ops.tau.sub(&ops.pnb).matmul(&y).scale(-1.0);
    let de_inv: Vec<f64> = ops.de.diagonal().iter().map(|d| 1.0 / d).collect();
    let e = averaging_projection(g, es)
        .matmul(z_e)
        .matmul(&DenseMatrix::from_diagonal(&de_inv))
        .matmul(&f);
    let gap = (0..g.n()).map(|i| g.degree(i) as f64 * e[(i, i)]).sum::<f64>() / (2 * g.m()) as f64;
    GapMatrices { y, f, e, gap }
}

/// Everything the non-backtracking pipeline computes for one graph.
/// Fields depending on the edge fundamental matrix are absent for cycles.
#[derive(Debug, Clone, Serialize)]
pub struct NbBundle {
    #[serde(skip)]
    pub edges: EdgeSpace,
    pub ops: NbEdgeOperators,
    pub z_e: Option<DenseMatrix>,
    pub mev: DenseMatrix,
    pub mv: DenseMatrix,
    pub r: DenseMatrix,
    pub zv: Option<DenseMatrix>,
    pub y: DenseMatrix,
    pub f: DenseMatrix,
    pub e: Option<DenseMatrix>,
    pub kemeny_hitting: f64,
    pub kemeny_trace: Option<f64>,
    pub kemeny_edge: Option<f64>,
    pub gap: Option<f64>,
    pub condition: ConditionReport,
}

pub fn nb_analyze(g: &Graph, tol: f64) -> Result<NbBundle> {
    require_nb_walkable(g)?;
    let es = g.edge_space();
    let ops = build_operators(g, &es)?;
    let mev = nb_hitting_mev(g, &es, &ops)?;
    let mv = nb_hitting_mv(g, &es, &mev);
    let r = nb_return_times(g, &es, &ops, &mev);
    let condition = condition_check(g, &es, &ops, &mev, tol);
    let pi = g.stationary();
    let kemeny_hitting = mv.bilinear(&pi, &pi);

    let z_e = match nb_edge_fundamental(&ops) {
        Ok(z) => Some(z),
        Err(Error::FundamentalMatrixUndefined) => None,
        Err(other) => return Err(other),
    };
    let (zv, gap) = match &z_e {
        Some(z) => (
            Some(vertex_fundamental(g, &es, &ops, z)),
            Some(gap_matrices(g, &es, &ops, z, &mev)),
        ),
        None => (None, None),
    };
    let (y, f, e, gap_value) = match gap {
        Some(GapMatrices { y, f, e, gap }) => (y, f, Some(e), Some(gap)),
        None => {
            let y = return_time_matrix(g, &es, &ops, &mev);
            let f = ops.tau.sub(&ops.pnb).matmul(&y).scale(-1.0);
            (y, f, None, None)
        }
    };
    Ok(NbBundle {
        kemeny_trace: zv.as_ref().map(|z| trace(z) - 1.0),
        kemeny_edge: z_e.as_ref().map(nb_edge_kemeny),
        edges: es,
        ops,
        z_e,
        mev,
        mv,
        r,
        zv,
        y,
        f,
        e,
        kemeny_hitting,
        gap: gap_value,
        condition,
    })
}

/// `(pi^T M_v pi, tr(Z_v) - 1)`; the trace form is `None` for cycles.
pub fn nb_kemeny_pair(g: &Graph) -> Result<(f64, Option<f64>)> {
    require_nb_walkable(g)?;
    let es = g.edge_space();
    let ops = build_operators(g, &es)?;
    let mev = nb_hitting_mev(g, &es, &ops)?;
    let pi = g.stationary();
    let hitting = nb_hitting_mv(g, &es, &mev).bilinear(&pi, &pi);
    let trace_form = match nb_edge_fundamental(&ops) {
        Ok(z) => Some(trace(&vertex_fundamental(g, &es, &ops, &z)) - 1.0),
        Err(Error::FundamentalMatrixUndefined) => None,
        Err(other) => return Err(other),
    };
    Ok((hitting, trace_form))
}

/// `tr(Z_v) - 1` alone, the cheap route. Fails on cycles.
pub fn nb_kemeny_trace(g: &Graph) -> Result<f64> {
    require_nb_walkable(g)?;
    let es = g.edge_space();
    let ops = build_operators(g, &es)?;
    let z = nb_edge_fundamental(&ops)?;
    Ok(trace(&vertex_fundamental(g, &es, &ops, &z)) - 1.0)
}
