//! Simple undirected graphs and their directed-edge (arc) state space.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// A simple, undirected, loop-free graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    degrees: Vec<usize>,
    m: usize,
}

impl Graph {
    /// Builds a graph from vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to a single edge.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            degrees: vec![0; n],
            m: 0,
        }
    }

    /// Inserts `{u, v}` if absent. Callers guarantee `u != v` and range.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.adj[u * self.n + v] {
            self.adj[u * self.n + v] = true;
            self.adj[v * self.n + u] = true;
            self.degrees[u] += 1;
            self.degrees[v] += 1;
            self.m += 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn degree_matrix(&self) -> DenseMatrix {
        let d: Vec<f64> = self.degrees.iter().map(|&d| d as f64).collect();
        DenseMatrix::from_diagonal(&d)
    }

    /// Stationary distribution of both walks, `deg(v) / 2m`.
    pub fn stationary(&self) -> Vec<f64> {
        let vol = (2 * self.m) as f64;
        self.degrees.iter().map(|&d| d as f64 / vol).collect()
    }

    /// A graph with no vertices counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.degrees.iter().all(|&d| d == 2) && self.is_connected()
    }

    pub fn edge_space(&self) -> EdgeSpace {
        EdgeSpace::new(self)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let pairs: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n, &pairs)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// The `2m` directed edges of a graph in lexicographic `(tail, head)` order.
///
/// Arcs leaving the same tail are contiguous, so `out_arcs(v)` is a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpace {
    arcs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    rev: Vec<usize>,
}

impl EdgeSpace {
    pub fn new(g: &Graph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.m());
        let mut offsets = Vec::with_capacity(g.n() + 1);
        for i in 0..g.n() {
            offsets.push(arcs.len());
            arcs.extend(g.neighbors(i).map(|j| (i, j)));
        }
        offsets.push(arcs.len());
        let mut es = EdgeSpace {
            arcs,
            offsets,
            rev: Vec::new(),
        };
        es.rev = es
            .arcs
            .iter()
            .map(|&(i, j)| es.index(j, i).expect("reverse arc present"))
            .collect();
        es
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, e: usize) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.arcs[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.arcs[e].1
    }

    /// Position of arc `(i, j)`, if it exists.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        if i + 1 >= self.offsets.len() {
            return None;
        }
        let range = self.out_arcs(i);
        let start = range.start;
        self.arcs[range]
            .binary_search_by_key(&j, |&(_, h)| h)
            .ok()
            .map(|k| start + k)
    }

    /// Position of the reversed arc.
    pub fn rev(&self, e: usize) -> usize {
        self.rev[e]
    }

    pub fn out_arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
}

/// Whether non-backtracking quantities are defined for a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NbrwClass {
    #[serde(rename = "OK")]
    Ok,
    Disconnected,
    /// Some vertex has degree below two (the non-backtracking walk gets stuck).
    HasDegreeOneVertex,
    /// Connected and 2-regular: hitting times exist, fundamental matrix does not.
    IsCycle,
}

impl NbrwClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            NbrwClass::Ok => "OK",
            NbrwClass::Disconnected => "Disconnected",
            NbrwClass::HasDegreeOneVertex => "HasDegreeOneVertex",
            NbrwClass::IsCycle => "IsCycle",
        }
    }
}

pub fn validate_for_nbrw(g: &Graph) -> NbrwClass {
    if !g.is_connected() {
        NbrwClass::Disconnected
    } else if g.min_degree() < 2 {
        NbrwClass::HasDegreeOneVertex
    } else if g.is_cycle() {
        NbrwClass::IsCycle
    } else {
        NbrwClass::Ok
    }
}

/// Rejects graphs on which the non-backtracking walk is undefined.
pub(crate) fn require_nb_walkable(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Some(vertex) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Err(Error::DegreeOneVertex { vertex });
    }
    Ok(())
}
