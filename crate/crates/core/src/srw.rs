//! Simple random walk: transition matrix, fundamental matrix, hitting times
//! and Kemeny's constant.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nb_edge::{lift, projection};
use crate::numerics::{inverse, symmetric_eigenvalues, trace, DenseMatrix};

#[derive(Debug, Clone, Serialize)]
pub struct SrwBundle {
    pub p: DenseMatrix,
    pub pi: Vec<f64>,
    pub z: DenseMatrix,
    /// Mean first passage times with zero diagonal.
    pub m: DenseMatrix,
    pub kemeny_trace: f64,
    pub kemeny_spectral: f64,
    pub kemeny_hitting: f64,
}

impl SrwBundle {
    /// Mean return times `1 / pi_i`.
    pub fn return_times(&self) -> Vec<f64> {
        self.pi.iter().map(|p| 1.0 / p).collect()
    }
}

/// `D^{-1} A`.
pub fn transition_matrix(g: &Graph) -> DenseMatrix {
    DenseMatrix::from_fn(g.n(), g.n(), |i, j| {
        if g.has_edge(i, j) {
            1.0 / g.degree(i) as f64
        } else {
            0.0
        }
    })
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.m() == 0 || !g.is_connected() {
        Err(Error::NotConnected)
    } else {
        Ok(())
    }
}

fn shifted_inverse(p: &DenseMatrix, pi: &[f64]) -> Result<DenseMatrix> {
    let n = p.rows();
    let shifted = DenseMatrix::identity(n)
        .sub(p)
        .add(&DenseMatrix::outer(&vec![1.0; n], pi));
    inverse(&shifted).map_err(|e| match e {
        Error::SingularMatrix { .. } => Error::FundamentalMatrixUndefined,
        other => other,
    })
}

pub fn srw_analyze(g: &Graph) -> Result<SrwBundle> {
    require_connected(g)?;
    let n = g.n();
    let p = transition_matrix(g);
    let pi = g.stationary();
    let z = shifted_inverse(&p, &pi)?;
    let m = DenseMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { (z[(j, j)] - z[(i, j)]) / pi[j] });

    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let sym = DenseMatrix::from_fn(n, n, |i, j| {
        if g.has_edge(i, j) {
            inv_sqrt[i] * inv_sqrt[j]
        } else {
            0.0
        }
    });
    let eig = symmetric_eigenvalues(&sym)?;
    // Ascending order: the last eigenvalue is the Perron root 1.
    let kemeny_spectral = eig[..n - 1].iter().map(|l| 1.0 / (1.0 - l)).sum();

    Ok(SrwBundle {
        kemeny_trace: trace(&z) - 1.0,
        kemeny_spectral,
        kemeny_hitting: m.bilinear(&pi, &pi),
        p,
        pi,
        z,
        m,
    })
}

/// Edge-space simple walk `P_e((i,j),(k,l)) = [j = k] / deg(j)` and its
/// fundamental matrix. Returns `(P_e, Z_e)`.
pub fn srw_edge_fundamental(g: &Graph) -> Result<(DenseMatrix, DenseMatrix)> {
    require_connected(g)?;
    let es = g.edge_space();
    let len = es.len();
    let mut pe = DenseMatrix::zeros(len, len);
    for e in 0..len {
        let j = es.head(e);
        let w = 1.0 / g.degree(j) as f64;
        for f in es.out_arcs(j) {
            pe[(e, f)] = w;
        }
    }
    let pi_e = vec![1.0 / len as f64; len];
    let ze = shifted_inverse(&pe, &pi_e)?;
    Ok((pe, ze))
}

/// `D^{-1} T Z_e T^T`, which recovers the vertex fundamental matrix.
pub fn project_edge_fundamental(g: &Graph, ze: &DenseMatrix) -> DenseMatrix {
    let es = g.edge_space();
    let t = projection(&es, g.n());
    let dinv: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / d as f64).collect();
    DenseMatrix::from_diagonal(&dinv)
        .matmul(&t)
        .matmul(ze)
        .matmul(&t.transpose())
}

/// `I + D^{-1} T Z_e S - W_v`, the lift form of the same projection.
pub fn lift_edge_fundamental(g: &Graph, ze: &DenseMatrix) -> DenseMatrix {
    let es = g.edge_space();
    let n = g.n();
    let t = projection(&es, n);
    let s = lift(&es, n);
    let dinv: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / d as f64).collect();
    let w = DenseMatrix::outer(&vec![1.0; n], &g.stationary());
    DenseMatrix::identity(n)
        .add(&DenseMatrix::from_diagonal(&dinv).matmul(&t).matmul(ze).matmul(&s))
        .sub(&w)
}
