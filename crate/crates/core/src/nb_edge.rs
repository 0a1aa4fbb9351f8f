//! Edge-space operators of the non-backtracking walk.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpace, Graph};
use crate::numerics::{inverse, trace, DenseMatrix};

/// Operators on the `2m` arcs of a graph, built once per graph.
#[derive(Debug, Clone, Serialize)]
pub struct NbEdgeOperators {
    /// `2m x n` lift: `S[(i,j), x] = [j = x]`.
    pub s: DenseMatrix,
    /// `n x 2m` projection: `T[x, (i,j)] = [i = x]`.
    pub t: DenseMatrix,
    /// Arc reversal permutation.
    pub tau: DenseMatrix,
    /// Diagonal of head degrees.
    pub de: DenseMatrix,
    /// Non-backtracking transition matrix.
    pub pnb: DenseMatrix,
    /// Uniform distribution on arcs.
    pub pi_e: Vec<f64>,
}

pub fn lift(es: &EdgeSpace, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(es.len(), n, |e, x| f64::from(u8::from(es.head(e) == x)))
}

pub fn projection(es: &EdgeSpace, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, es.len(), |x, e| f64::from(u8::from(es.tail(e) == x)))
}

/// `D^{-1} T`: averages over the out-arcs of each vertex.
pub fn averaging_projection(g: &Graph, es: &EdgeSpace) -> DenseMatrix {
    DenseMatrix::from_fn(g.n(), es.len(), |x, e| {
        if es.tail(e) == x {
            1.0 / g.degree(x) as f64
        } else {
            0.0
        }
    })
}

pub fn build_operators(g: &Graph, es: &EdgeSpace) -> Result<NbEdgeOperators> {
    if let Some(vertex) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Err(Error::DegreeOneVertex { vertex });
    }
    let len = es.len();
    let mut pnb = DenseMatrix::zeros(len, len);
    for e in 0..len {
        let (i, j) = es.arc(e);
        let w = 1.0 / (g.degree(j) - 1) as f64;
        for f in es.out_arcs(j) {
            if es.head(f) != i {
                pnb[(e, f)] = w;
            }
        }
    }
    let mut tau = DenseMatrix::zeros(len, len);
    for e in 0..len {
        tau[(e, es.rev(e))] = 1.0;
    }
    let head_degrees: Vec<f64> = (0..len).map(|e| g.degree(es.head(e)) as f64).collect();
    Ok(NbEdgeOperators {
        s: lift(es, g.n()),
        t: projection(es, g.n()),
        tau,
        de: DenseMatrix::from_diagonal(&head_degrees),
        pnb,
        pi_e: vec![1.0 / len as f64; len],
    })
}

/// `(I - P_nb + 1 pi_e^T)^{-1}`.
///
/// Undefined when every head has degree two (a cycle, or a disjoint union of
/// cycles): the walk is then a permutation and the shifted matrix is singular.
pub fn nb_edge_fundamental(ops: &NbEdgeOperators) -> Result<DenseMatrix> {
    let len = ops.pnb.rows();
    if ops.de.diagonal().iter().all(|&d| d == 2.0) {
        return Err(Error::FundamentalMatrixUndefined);
    }
    let shifted = DenseMatrix::identity(len)
        .sub(&ops.pnb)
        .add(&DenseMatrix::outer(&vec![1.0; len], &ops.pi_e));
    inverse(&shifted).map_err(|e| match e {
        Error::SingularMatrix { .. } => Error::FundamentalMatrixUndefined,
        other => other,
    })
}

pub fn nb_edge_kemeny(z_e: &DenseMatrix) -> f64 {
    trace(z_e) - 1.0
}

/// Period of the arc chain restricted to the arcs reachable from arc 0.
///
/// For a connected non-cycle graph of minimum degree two the chain is
/// irreducible, and `P_nb - 1 pi_e^T` has spectral radius below one exactly
/// when the period is 1. A bowtie has period 3, for instance, and a bipartite
/// graph has even period.
pub fn arc_period(es: &EdgeSpace, ops: &NbEdgeOperators) -> usize {
    let len = es.len();
    if len == 0 {
        return 0;
    }
    let mut level = vec![usize::MAX; len];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    let mut period = 0usize;
    while let Some(e) = queue.pop_front() {
        for f in (0..len).filter(|&f| ops.pnb[(e, f)] > 0.0) {
            if level[f] == usize::MAX {
                level[f] = level[e] + 1;
                queue.push_back(f);
            } else {
                period = gcd(period, (level[e] + 1).abs_diff(level[f]));
            }
        }
    }
    period
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
