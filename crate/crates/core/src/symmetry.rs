//! Automorphisms by pruned backtracking, and the edge/arc orbit checks built
//! on them.
//!
//! Candidates for the image of a vertex must share its degree and the sorted
//! multiset of its neighbours' degrees, and must respect adjacency to every
//! vertex already placed. Vertices are placed in breadth-first order so that
//! the adjacency constraints bite early.
//!
//! The orbit checks never enumerate the whole group: they ask, pair by pair,
//! whether some automorphism maps one edge (or arc) to another.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by the searches in this module.
pub const MAX_SYMMETRY_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismGroup {
    /// Each permutation maps vertex `v` to `perm[v]`. The identity comes first.
    pub perms: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }
}

struct Search<'a> {
    g: &'a Graph,
    signature: Vec<(usize, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Result<Self> {
        if g.n() > MAX_SYMMETRY_VERTICES {
            return Err(Error::TooLarge {
                n: g.n(),
                max: MAX_SYMMETRY_VERTICES,
            });
        }
        let signature = (0..g.n())
            .map(|v| {
                let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
                nd.sort_unstable();
                (g.degree(v), nd)
            })
            .collect();
        Ok(Search { g, signature })
    }

    fn compatible(&self, v: usize, w: usize) -> bool {
        self.signature[v] == self.signature[w]
    }

    /// Placement order: `seeds` first, then breadth-first from what is placed.
    fn order(&self, seeds: &[usize]) -> Vec<usize> {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                order.push(s);
                queue.push_back(s);
            }
        }
        let mut next_root = 0;
        loop {
            while let Some(v) = queue.pop_front() {
                for u in self.g.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        order.push(u);
                        queue.push_back(u);
                    }
                }
            }
            while next_root < n && seen[next_root] {
                next_root += 1;
            }
            if next_root == n {
                break;
            }
            seen[next_root] = true;
            order.push(next_root);
            queue.push_back(next_root);
        }
        order
    }

    /// Runs the search with `fixed` as forced `(vertex, image)` pairs.
    /// `visit` returns `true` to stop. Returns whether the search was stopped.
    fn run(&self, fixed: &[(usize, usize)], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.g.n();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &(v, w) in fixed {
            if image[v] != usize::MAX {
                if image[v] != w {
                    return false;
                }
                continue;
            }
            if used[w] || !self.compatible(v, w) {
                return false;
            }
            image[v] = w;
            used[w] = true;
        }
        let seeds: Vec<usize> = fixed.iter().map(|&(v, _)| v).collect();
        for (a, &u) in seeds.iter().enumerate() {
            for &v in &seeds[..a] {
                if self.g.has_edge(u, v) != self.g.has_edge(image[u], image[v]) {
                    return false;
                }
            }
        }
        let order = self.order(&seeds);
        let start = order.iter().take_while(|&&v| image[v] != usize::MAX).count();
        self.extend(&order, start, &mut image, &mut used, visit)
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(image);
        }
        let v = order[depth];
        if image[v] != usize::MAX {
            return self.extend(order, depth + 1, image, used, visit);
        }
        for w in 0..self.g.n() {
            if used[w] || !self.compatible(v, w) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.g.has_edge(u, v) == self.g.has_edge(image[u], w));
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            let stop = self.extend(order, depth + 1, image, used, visit);
            image[v] = usize::MAX;
            used[w] = false;
            if stop {
                return true;
            }
        }
        false
    }

    fn exists(&self, fixed: &[(usize, usize)]) -> bool {
        self.run(fixed, &mut |_| true)
    }
}

/// Enumerates the full automorphism group. The group of a dense graph can be
/// enormous (`K_12` has `12!` elements); prefer the orbit checks below when
/// only orbits are needed.
pub fn automorphisms(g: &Graph) -> Result<AutomorphismGroup> {
    let search = Search::new(g)?;
    let mut perms = Vec::new();
    search.run(&[], &mut |p| {
        perms.push(p.to_vec());
        false
    });
    perms.sort();
    // Sorting puts the identity first: it is the lexicographically smallest permutation.
    Ok(AutomorphismGroup { perms })
}

/// Whether the automorphism group has a single orbit on undirected edges.
/// Graphs without edges count as edge-transitive.
pub fn edge_transitive(g: &Graph) -> Result<bool> {
    let search = Search::new(g)?;
    let edges = g.edges();
    let Some(&(u0, v0)) = edges.first() else {
        return Ok(true);
    };
    let degree_pair = |(u, v): (usize, usize)| {
        let (a, b) = (g.degree(u), g.degree(v));
        (a.min(b), a.max(b))
    };
    if edges.iter().any(|&e| degree_pair(e) != degree_pair((u0, v0))) {
        return Ok(false);
    }
    Ok(edges[1..]
        .iter()
        .all(|&(a, b)| search.exists(&[(u0, a), (v0, b)]) || search.exists(&[(u0, b), (v0, a)])))
}

/// Whether, for every vertex `i`, all arcs leaving `i` lie in one orbit of the
/// automorphism group acting on arcs. Such an automorphism must fix `i`.
pub fn local_arc_orbit_condition(g: &Graph) -> Result<bool> {
    let search = Search::new(g)?;
    for i in 0..g.n() {
        let mut nbrs = g.neighbors(i);
        let Some(j0) = nbrs.next() else {
            continue;
        };
        for j in nbrs {
            if !search.compatible(j0, j) || !search.exists(&[(i, i), (j0, j)]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
