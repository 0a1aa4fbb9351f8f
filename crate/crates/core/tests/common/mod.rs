#![allow(dead_code)]

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use nbkemeny::graph6::read_corpus;
use nbkemeny::Graph;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

/// `(line, graph6)` pairs of a fixture corpus.
pub fn corpus(name: &str) -> Vec<(usize, String)> {
    let file = File::open(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    read_corpus(BufReader::new(file)).map(|l| l.unwrap()).collect()
}

pub fn mindeg2(n: usize) -> Vec<(usize, String)> {
    corpus(&format!("connected_mindeg2_n{n}.g6"))
}

pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edge_list(10, &pairs).unwrap()
}

pub fn cube() -> Graph {
    let pairs: Vec<_> = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|(u, v)| u < v)
        .collect();
    Graph::from_edge_list(8, &pairs).unwrap()
}

/// A connected graph with minimum degree two that is not a cycle, drawn from
/// G(n, 1/2) by rejection.
pub fn random_nb_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = Graph::from_edge_list(n, &pairs).unwrap();
        if g.is_connected() && g.min_degree() >= 2 && !g.is_cycle() {
            return g;
        }
    }
}
