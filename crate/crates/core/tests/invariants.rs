mod common;

use nbkemeny::families::FamilySpec;
use nbkemeny::nb_edge::{arc_period, averaging_projection, build_operators, nb_edge_fundamental};
use nbkemeny::nb_vertex::{k_step_transition, nb_analyze, vertex_fundamental, CONDITION_TOLERANCE};
use nbkemeny::numerics::{symmetric_eigenvalues, DenseMatrix};
use nbkemeny::symmetry::{edge_transitive, local_arc_orbit_condition};
use nbkemeny::{parse_graph6, validate_for_nbrw, write_graph6, Graph, NbrwClass};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_corpus() -> Vec<Graph> {
    (4..=7)
        .flat_map(common::mindeg2)
        .map(|(_, t)| parse_graph6(&t).unwrap())
        .collect()
}

#[test]
fn fixtures_are_what_they_claim() {
    let expected = [(4, 3), (5, 11), (6, 61), (7, 507), (8, 7442)];
    for (n, count) in expected {
        let lines = common::mindeg2(n);
        assert_eq!(lines.len(), count, "n = {n}");
        for (_, text) in &lines {
            let g = parse_graph6(text).unwrap();
            assert_eq!(g.n(), n);
            assert!(g.is_connected() && g.min_degree() >= 2);
            assert_eq!(&write_graph6(&g).unwrap(), text);
        }
    }
    assert_eq!(common::corpus("connected_n5.g6").len(), 21);
    assert_eq!(common::corpus("connected_n6.g6").len(), 112);
}

#[test]
fn edge_space_reversal_is_involution_corpus_wide() {
    for g in small_corpus() {
        let es = g.edge_space();
        assert_eq!(es.len(), 2 * g.m());
        for e in 0..es.len() {
            assert_eq!(es.rev(es.rev(e)), e);
            let (i, j) = es.arc(e);
            assert_eq!(es.index(i, j), Some(e));
        }
    }
}

/// Partial sums `sum_{k<K} A^k` for `K = 1, 2, 4, ..., 2^steps`, by doubling.
fn doubled_partial_sums(a: &DenseMatrix, steps: u32) -> Vec<(usize, DenseMatrix)> {
    let mut sum = DenseMatrix::identity(a.rows());
    let mut power = a.clone();
    let mut out = vec![(1, sum.clone())];
    for step in 1..=steps {
        sum = sum.add(&power.matmul(&sum));
        power = power.matmul(&power);
        out.push((1 << step, sum.clone()));
    }
    out
}

fn shifted_nb(ops: &nbkemeny::nb_edge::NbEdgeOperators) -> DenseMatrix {
    let len = ops.pnb.rows();
    ops.pnb.sub(&DenseMatrix::outer(&vec![1.0; len], &ops.pi_e))
}

fn well_mixing() -> Vec<Graph> {
    vec![
        FamilySpec::Complete { n: 5 }.generate().unwrap(),
        FamilySpec::CycleBarbell { k: 2, a: 3, b: 4 }.generate().unwrap(),
        FamilySpec::CycleWithChord { n: 6, k: 3 }.generate().unwrap(),
        FamilySpec::CycleBarbell { k: 3, a: 3, b: 4 }.generate().unwrap(),
        common::petersen(),
        parse_graph6("GCOf~w").unwrap(),
    ]
}

#[test]
fn neumann_series_at_fixed_depth() {
    for g in well_mixing() {
        let es = g.edge_space();
        let ops = build_operators(&g, &es).unwrap();
        assert_eq!(arc_period(&es, &ops), 1, "{g:?}");
        let z = nb_edge_fundamental(&ops).unwrap();
        let a = shifted_nb(&ops);
        if g.m() <= 20 {
            let mut term = DenseMatrix::identity(a.rows());
            let mut sum = term.clone();
            for _ in 1..=200 {
                term = term.matmul(&a);
                sum = sum.add(&term);
            }
            assert!(sum.max_abs_diff(&z) <= 1e-6, "{g:?}: {}", sum.max_abs_diff(&z));
        }
        if g.m() <= 16 {
            let zv = vertex_fundamental(&g, &es, &ops, &z);
            let w_v = DenseMatrix::outer(&vec![1.0; g.n()], &g.stationary());
            let dinv_t = averaging_projection(&g, &es);
            // I + sum_{k=1..300} (D^{-1} T P_nb^{k-1} S - W_v)
            let mut power = DenseMatrix::identity(es.len());
            let mut sum = DenseMatrix::identity(g.n());
            for k in 1..=300 {
                if k > 1 {
                    power = power.matmul(&ops.pnb);
                }
                sum = sum.add(&dinv_t.matmul(&power).matmul(&ops.s).sub(&w_v));
            }
            assert!(sum.max_abs_diff(&zv) <= 1e-5, "{g:?}: {}", sum.max_abs_diff(&zv));
        }
    }
}

#[test]
fn neumann_series_converges_iff_aperiodic() {
    let (mut aperiodic, mut periodic) = (0, 0);
    for g in small_corpus() {
        if validate_for_nbrw(&g) != NbrwClass::Ok {
            continue;
        }
        let es = g.edge_space();
        let ops = build_operators(&g, &es).unwrap();
        let z = nb_edge_fundamental(&ops).unwrap();
        let sums = doubled_partial_sums(&shifted_nb(&ops), 12);
        let err = |k: usize| sums.iter().find(|(kk, _)| *kk == k).unwrap().1.max_abs_diff(&z);
        // The vertex partial sum through K steps is I + D^{-1} T (S_K - W_e) S.
        let w_e = DenseMatrix::filled(es.len(), es.len(), 1.0 / es.len() as f64);
        let zv = vertex_fundamental(&g, &es, &ops, &z);
        let dinv_t = averaging_projection(&g, &es);
        let vertex_err = |k: usize| {
            let s_k = &sums.iter().find(|(kk, _)| *kk == k).unwrap().1;
            DenseMatrix::identity(g.n())
                .add(&dinv_t.matmul(&s_k.sub(&w_e)).matmul(&ops.s))
                .max_abs_diff(&zv)
        };
        if arc_period(&es, &ops) == 1 {
            aperiodic += 1;
            assert!(err(4096) <= 1e-6 && err(4096) <= err(256), "{g:?}");
            assert!(vertex_err(4096) <= 1e-5, "{g:?}");
        } else {
            periodic += 1;
            assert!(err(4096) > 1e-3, "{g:?}");
        }
    }
    assert!(aperiodic > 500 && periodic > 0, "{aperiodic} {periodic}");
}

#[test]
fn bowtie_is_periodic_yet_invertible() {
    let g = parse_graph6("DQ{").unwrap();
    let es = g.edge_space();
    let ops = build_operators(&g, &es).unwrap();
    assert_eq!(arc_period(&es, &ops), 3);
    let z = nb_edge_fundamental(&ops).unwrap();
    let sums = doubled_partial_sums(&shifted_nb(&ops), 12);
    assert!(sums.last().unwrap().1.max_abs_diff(&z) > 1e-3);
}

#[test]
fn identities_under_the_condition() {
    let mut holders = 0;
    for g in small_corpus()
        .into_iter()
        .chain([parse_graph6("G?rFf_").unwrap(), parse_graph6("GCOf~w").unwrap()])
    {
        if validate_for_nbrw(&g) != NbrwClass::Ok {
            continue;
        }
        let b = nb_analyze(&g, CONDITION_TOLERANCE).unwrap();
        if !b.condition.holds {
            continue;
        }
        holders += 1;
        let n = g.n();
        let ops = &b.ops;
        // Y = T^T R
        assert!(b.y.max_abs_diff(&ops.t.transpose().matmul(&b.r)) < 1e-8);
        // m_ij = (z_jj - z_ij) / pi_j
        let zv = b.zv.as_ref().unwrap();
        let pi = g.stationary();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!((b.mv[(i, j)] - (zv[(j, j)] - zv[(i, j)]) / pi[j]).abs() < 1e-8);
                }
            }
        }
        // (tau - P_nb)(I - P_nb) M_ev = 0
        let len = ops.pnb.rows();
        let lhs = ops
            .tau
            .sub(&ops.pnb)
            .matmul(&DenseMatrix::identity(len).sub(&ops.pnb))
            .matmul(&b.mev);
        assert!(lhs.max_abs() < 1e-8);
        assert!(b.gap.unwrap().abs() < 1e-8);
        assert!((b.kemeny_hitting - b.kemeny_trace.unwrap()).abs() < 1e-8);
    }
    assert!(holders >= 10);
}

#[test]
fn symmetry_implies_condition() {
    let mut et = 0;
    let mut local = 0;
    for g in small_corpus() {
        let b = nb_analyze(&g, CONDITION_TOLERANCE).unwrap();
        if edge_transitive(&g).unwrap() {
            et += 1;
            assert!(b.condition.holds, "{g:?}");
        }
        if local_arc_orbit_condition(&g).unwrap() {
            local += 1;
            assert!(b.condition.holds, "{g:?}");
        }
    }
    assert!(et > 0 && local > 0);
}

#[test]
fn averaging_commutes_with_uniform_projectors() {
    // D^{-1} T W_e = W_v D^{-1} T
    for g in small_corpus() {
        let es = g.edge_space();
        let len = es.len();
        let n = g.n();
        let dinv_t = averaging_projection(&g, &es);
        let w_e = DenseMatrix::filled(len, len, 1.0 / len as f64);
        let w_v = DenseMatrix::outer(&vec![1.0; n], &g.stationary());
        assert!(dinv_t.matmul(&w_e).max_abs_diff(&w_v.matmul(&dinv_t)) < 1e-15);
    }
}

#[test]
fn normalized_spectrum_in_unit_interval() {
    let graphs = common::corpus("connected_n6.g6")
        .into_iter()
        .chain(common::mindeg2(7))
        .map(|(_, t)| parse_graph6(&t).unwrap());
    for g in graphs {
        let s = DenseMatrix::from_fn(g.n(), g.n(), |i, j| {
            if g.has_edge(i, j) {
                1.0 / ((g.degree(i) * g.degree(j)) as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = symmetric_eigenvalues(&s).unwrap();
        assert!(eig.iter().all(|&l| (-1.0 - 1e-12..=1.0 + 1e-12).contains(&l)));
        assert!((eig.last().unwrap() - 1.0).abs() < 1e-12);
    }
}

fn arb_nb_graph() -> impl Strategy<Value = Graph> {
    (4usize..=9, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_nb_graph(&mut rng, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kemeny_invariant_under_relabeling(g in arb_nb_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm).unwrap();
        let a = nb_analyze(&g, CONDITION_TOLERANCE).unwrap();
        let b = nb_analyze(&h, CONDITION_TOLERANCE).unwrap();
        prop_assert!((a.kemeny_hitting - b.kemeny_hitting).abs() < 1e-9);
        prop_assert!((a.kemeny_trace.unwrap() - b.kemeny_trace.unwrap()).abs() < 1e-9);
        prop_assert_eq!(a.condition.holds, b.condition.holds);
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert!((a.mv[(u, v)] - b.mv[(perm[u], perm[v])]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn nb_pipeline_invariants(g in arb_nb_graph()) {
        let b = nb_analyze(&g, CONDITION_TOLERANCE).unwrap();
        let n = g.n();
        for i in 0..n {
            prop_assert_eq!(b.mv[(i, i)], 0.0);
            prop_assert!((b.r[(i, i)] - (2 * g.m()) as f64 / g.degree(i) as f64).abs() < 1e-8);
            for j in 0..n {
                if i != j {
                    prop_assert!(b.mv[(i, j)] >= 1.0 - 1e-12);
                }
            }
        }
        let gap = b.gap.unwrap();
        prop_assert!((b.kemeny_hitting - b.kemeny_trace.unwrap() - gap).abs() < 1e-8);
        prop_assert!(b.kemeny_trace.unwrap() <= b.kemeny_hitting + 1e-8);
        let es = &b.edges;
        let p1 = k_step_transition(&g, es, &b.ops, 1).unwrap();
        prop_assert!(p1.max_abs_diff(&nbkemeny::srw::transition_matrix(&g)) < 1e-15);
        let srw = nbkemeny::srw::srw_analyze(&g).unwrap();
        prop_assert!(b.kemeny_hitting < srw.kemeny_hitting);
    }
}
