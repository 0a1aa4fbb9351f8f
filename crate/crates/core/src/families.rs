//! Named graph families and their generators.
//!
//! Labelings are fixed so individual hitting times can be compared against
//! hand-derived case formulas:
//!
//! * `C_nC_k`: the n-cycle `0..n` with chord `{0, k-1}`; vertex 0 is a
//!   degree-three vertex and the labels run around the k-cycle first.
//! * `CB(k, a, b)`: `C_a` on `0..a` with hub `a-1` (so vertex 0 is adjacent
//!   to the hub), then the interior path vertices, then `C_b` starting at its
//!   hub `a+k-2`.
//! * `PW(n, k)`: hub 0, cycle `c` occupies the block `1 + c(n-1) .. 1 + (c+1)(n-1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete { n: usize },
    CompleteBipartite { p: usize, q: usize },
    Cycle { n: usize },
    CycleWithChord { n: usize, k: usize },
    CycleBarbell { k: usize, a: usize, b: usize },
    Pinwheel { n: usize, k: usize },
}

/// Family names accepted by [`FamilySpec::parse`], with their parameter keys.
pub const FAMILIES: &[(&str, &[&str])] = &[
    ("complete", &["n"]),
    ("complete_bipartite", &["p", "q"]),
    ("cycle", &["n"]),
    ("cycle_with_chord", &["n", "k"]),
    ("cycle_barbell", &["k", "a", "b"]),
    ("pinwheel", &["n", "k"]),
];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::CycleWithChord { .. } => "cycle_with_chord",
            FamilySpec::CycleBarbell { .. } => "cycle_barbell",
            FamilySpec::Pinwheel { .. } => "pinwheel",
        }
    }

    /// Parameters as `(key, value)` pairs in canonical order.
    pub fn params(&self) -> Vec<(&'static str, usize)> {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Cycle { n } => vec![("n", n)],
            FamilySpec::CompleteBipartite { p, q } => vec![("p", p), ("q", q)],
            FamilySpec::CycleWithChord { n, k } | FamilySpec::Pinwheel { n, k } => {
                vec![("n", n), ("k", k)]
            }
            FamilySpec::CycleBarbell { k, a, b } => vec![("k", k), ("a", a), ("b", b)],
        }
    }

    /// Builds a spec from a family name and `key=value,...` parameters.
    pub fn parse(name: &str, params: &str) -> Result<Self> {
        let keys = FAMILIES
            .iter()
            .find(|(f, _)| *f == name)
            .map(|(_, k)| *k)
            .ok_or_else(|| Error::InvalidFamilySpec(format!("unknown family '{name}'")))?;
        let mut values = vec![None; keys.len()];
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidFamilySpec(format!("expected key=value, got '{item}'")))?;
            let slot = keys
                .iter()
                .position(|k| *k == key.trim())
                .ok_or_else(|| Error::InvalidFamilySpec(format!("{name} has no parameter '{key}'")))?;
            let v = value
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidFamilySpec(format!("'{value}' is not a non-negative integer")))?;
            values[slot] = Some(v);
        }
        let get = |i: usize| {
            values[i].ok_or_else(|| Error::InvalidFamilySpec(format!("{name} needs parameter '{}'", keys[i])))
        };
        let spec = match name {
            "complete" => FamilySpec::Complete { n: get(0)? },
            "complete_bipartite" => FamilySpec::CompleteBipartite { p: get(0)?, q: get(1)? },
            "cycle" => FamilySpec::Cycle { n: get(0)? },
            "cycle_with_chord" => FamilySpec::CycleWithChord { n: get(0)?, k: get(1)? },
            "cycle_barbell" => FamilySpec::CycleBarbell {
                k: get(0)?,
                a: get(1)?,
                b: get(2)?,
            },
            "pinwheel" => FamilySpec::Pinwheel { n: get(0)?, k: get(1)? },
            _ => unreachable!("name validated above"),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::Complete { n } => n >= 1,
            FamilySpec::CompleteBipartite { p, q } => p >= 1 && q >= 1,
            FamilySpec::Cycle { n } => n >= 3,
            FamilySpec::CycleWithChord { n, k } => k >= 3 && k < n,
            FamilySpec::CycleBarbell { k, a, b } => k >= 2 && a >= 3 && b >= 3,
            FamilySpec::Pinwheel { n, k } => n >= 3 && k >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamilySpec(format!("infeasible parameters for {self}")))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Cycle { n } | FamilySpec::CycleWithChord { n, .. } => n,
            FamilySpec::CompleteBipartite { p, q } => p + q,
            FamilySpec::CycleBarbell { k, a, b } => a + b + k - 2,
            FamilySpec::Pinwheel { n, k } => k * n - k + 1,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            FamilySpec::Complete { n } => n * (n - 1) / 2,
            FamilySpec::CompleteBipartite { p, q } => p * q,
            FamilySpec::Cycle { n } => n,
            FamilySpec::CycleWithChord { n, .. } => n + 1,
            FamilySpec::CycleBarbell { k, a, b } => a + b + k - 1,
            FamilySpec::Pinwheel { n, k } => k * n,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let n_vertices = self.vertex_count();
        let mut pairs = Vec::with_capacity(self.edge_count());
        match *self {
            FamilySpec::Complete { n } => {
                pairs.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
            }
            FamilySpec::CompleteBipartite { p, q } => {
                pairs.extend((0..p).flat_map(|i| (p..p + q).map(move |j| (i, j))));
            }
            FamilySpec::Cycle { n } => push_cycle(&mut pairs, &(0..n).collect::<Vec<_>>()),
            FamilySpec::CycleWithChord { n, k } => {
                push_cycle(&mut pairs, &(0..n).collect::<Vec<_>>());
                pairs.push((0, k - 1));
            }
            FamilySpec::CycleBarbell { k, a, b } => {
                push_cycle(&mut pairs, &(0..a).collect::<Vec<_>>());
                let hub_b = a + k - 2;
                let path: Vec<usize> = std::iter::once(a - 1).chain(a..=hub_b).collect();
                pairs.extend(path.windows(2).map(|w| (w[0], w[1])));
                push_cycle(&mut pairs, &(hub_b..hub_b + b).collect::<Vec<_>>());
            }
            FamilySpec::Pinwheel { n, k } => {
                for c in 0..k {
                    let start = 1 + c * (n - 1);
                    let cyc: Vec<usize> = std::iter::once(0).chain(start..start + n - 1).collect();
                    push_cycle(&mut pairs, &cyc);
                }
            }
        }
        Graph::from_edge_list(n_vertices, &pairs)
    }
}

fn push_cycle(pairs: &mut Vec<(usize, usize)>, vertices: &[usize]) {
    let len = vertices.len();
    pairs.extend((0..len).map(|i| (vertices[i], vertices[(i + 1) % len])));
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `name(k=v,...)` or `name:k=v,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((name, rest)) = s.split_once('(') {
            let params = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidFamilySpec(format!("unbalanced parentheses in '{s}'")))?;
            FamilySpec::parse(name.trim(), params)
        } else if let Some((name, params)) = s.split_once(':') {
            FamilySpec::parse(name.trim(), params)
        } else {
            FamilySpec::parse(s, "")
        }
    }
}
