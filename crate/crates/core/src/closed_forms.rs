//! Closed-form Kemeny constants for the named families, and the extremal
//! predicates they imply.
//!
//! `*_nb` functions give the non-backtracking hitting-form constant
//! `pi^T M_v pi`; `*_srw` functions give the simple-walk constant.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::nb_vertex::nb_kemeny_pair;
use crate::srw::srw_analyze;

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParam(what.to_string()))
    }
}

pub fn kn_nb(n: usize) -> Result<f64> {
    require(n >= 3, "complete graph needs n >= 3 for the non-backtracking walk")?;
    let n = n as f64;
    Ok(n - 3.0 + 3.0 / n)
}

pub fn kn_srw(n: usize) -> Result<f64> {
    require(n >= 2, "complete graph needs n >= 2")?;
    let n = n as f64;
    Ok(n - 2.0 + 1.0 / n)
}

pub fn cycle_nb(n: usize) -> Result<f64> {
    require(n >= 3, "cycle needs n >= 3")?;
    Ok((n as f64 - 1.0) / 2.0)
}

pub fn cycle_srw(n: usize) -> Result<f64> {
    require(n >= 3, "cycle needs n >= 3")?;
    let n = n as f64;
    Ok((n * n - 1.0) / 6.0)
}

pub fn cnck_nb(n: usize, k: usize) -> Result<f64> {
    require(k >= 3 && k < n, "cycle with chord needs 3 <= k < n")?;
    let (n, k) = (n as f64, k as f64);
    let num =
        10.0 * n.powi(3) + n * n * (3.0 * k + 6.0) - n * (3.0 * k * k - 9.0 * k + 22.0) - 3.0 * k * k + 6.0 * k - 15.0;
    Ok(num / (18.0 * (n + 1.0).powi(2)))
}

pub fn cnck_srw(n: usize, k: usize) -> Result<f64> {
    require(k >= 3 && k < n, "cycle with chord needs 3 <= k < n")?;
    let (n, k) = (n as f64, k as f64);
    let num = k * n.powi(4) - (2.0 * k * k - 6.0 * k + 2.0) * n.powi(3)
        + (2.0 * k.powi(3) - 12.0 * k * k + 15.0 * k - 6.0) * n * n
        - (k.powi(4) - 12.0 * k.powi(3) + 27.0 * k * k - 21.0 * k + 7.0) * n
        - 4.0 * k.powi(4)
        + 16.0 * k.powi(3)
        - 23.0 * k * k
        + 14.0 * k
        - 3.0;
    Ok(num / (6.0 * (n + 1.0) * (k * (n + 2.0) - k * k - 1.0)))
}

pub fn cb_nb(k: usize, a: usize, b: usize) -> Result<f64> {
    require(k >= 2 && a >= 3 && b >= 3, "cycle barbell needs k >= 2 and a, b >= 3")?;
    let (k, a, b) = (k as f64, a as f64, b as f64);
    let num = 13.0 * a.powi(3)
        + 13.0 * b.powi(3)
        + b * b * (60.0 * k - 87.0)
        + a * a * (60.0 * b + 60.0 * k - 87.0)
        + 2.0 * b * (24.0 * k * k - 72.0 * k + 49.0)
        + 4.0 * (4.0 * k.powi(3) - 15.0 * k * k + 20.0 * k - 9.0)
        + 2.0 * a * (49.0 + 30.0 * b * b - 72.0 * k + 24.0 * k * k + 12.0 * b * (4.0 * k - 7.0));
    Ok(num / (24.0 * (a + b + k - 1.0).powi(2)))
}

pub fn kpq_nb(p: usize, q: usize) -> Result<f64> {
    require(
        p >= 2 && q >= 2,
        "complete bipartite needs p, q >= 2 for the non-backtracking walk",
    )?;
    let (p, q) = (p as f64, q as f64);
    Ok(p + q + 1.0 / p + 1.0 / q - 3.5)
}

pub fn kpq_srw(p: usize, q: usize) -> Result<f64> {
    require(p >= 1 && q >= 1, "complete bipartite needs p, q >= 1")?;
    Ok(p as f64 + q as f64 - 1.5)
}

pub fn pw_nb(n: usize, k: usize) -> Result<f64> {
    require(n >= 3 && k >= 1, "pinwheel needs n >= 3 and k >= 1")?;
    let (n, k) = (n as f64, k as f64);
    let num = (n - 1.0) * (12.0 * k.powi(3) * n - 18.0 * k * k * n + 13.0 * k * n - 2.0 * k - 4.0 * n + 2.0);
    Ok(num / (6.0 * k * n * (2.0 * k - 1.0)))
}

pub fn pw_srw(n: usize, k: usize) -> Result<f64> {
    require(n >= 3 && k >= 1, "pinwheel needs n >= 3 and k >= 1")?;
    let (n, k) = (n as f64, k as f64);
    Ok((2.0 * k - 1.0) * (n * n - 1.0) / 6.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormResult {
    pub family: FamilySpec,
    pub nb_value: Option<f64>,
    pub srw_value: Option<f64>,
    pub nb_formula: Option<&'static str>,
    pub srw_formula: Option<&'static str>,
}

/// Every closed form known for `spec`. A value is absent when no formula
/// covers the family or the parameters fall outside its range.
pub fn closed_form(spec: &FamilySpec) -> Result<ClosedFormResult> {
    spec.validate()?;
    let (nb, srw) = match *spec {
        FamilySpec::Complete { n } => (("complete_nb", kn_nb(n)), Some(("complete_srw", kn_srw(n)))),
        FamilySpec::CompleteBipartite { p, q } => (
            ("complete_bipartite_nb", kpq_nb(p, q)),
            Some(("complete_bipartite_srw", kpq_srw(p, q))),
        ),
        FamilySpec::Cycle { n } => (("cycle_nb", cycle_nb(n)), Some(("cycle_srw", cycle_srw(n)))),
        FamilySpec::CycleWithChord { n, k } => (
            ("cycle_with_chord_nb", cnck_nb(n, k)),
            Some(("cycle_with_chord_srw", cnck_srw(n, k))),
        ),
        FamilySpec::CycleBarbell { k, a, b } => (("cycle_barbell_nb", cb_nb(k, a, b)), None),
        FamilySpec::Pinwheel { n, k } => (("pinwheel_nb", pw_nb(n, k)), Some(("pinwheel_srw", pw_srw(n, k)))),
    };
    let (nb_formula, nb_value) = match nb {
        (id, Ok(v)) => (Some(id), Some(v)),
        (_, Err(_)) => (None, None),
    };
    let (srw_formula, srw_value) = match srw {
        Some((id, Ok(v))) => (Some(id), Some(v)),
        _ => (None, None),
    };
    Ok(ClosedFormResult {
        family: *spec,
        nb_value,
        srw_value,
        nb_formula,
        srw_formula,
    })
}

/// Every feasible cycle barbell on exactly `n` vertices, with `a >= b` since
/// `CB(k, a, b)` and `CB(k, b, a)` are isomorphic.
pub fn barbells_on(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for k in 2..=n {
        for b in 3..=n {
            // a + b + k - 2 = n
            let Some(a) = (n + 2).checked_sub(b + k) else {
                continue;
            };
            if a >= b {
                out.push(FamilySpec::CycleBarbell { k, a, b });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChordVsComplete {
    /// `pi^T M_v pi` of `C_n C_3` from the numeric pipeline.
    pub chord_value: f64,
    /// The same for `K_n`.
    pub complete_value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgmaxCheck {
    pub expected: FamilySpec,
    /// All candidates within `1e-9` of the best value.
    pub found: Vec<FamilySpec>,
    pub best_value: f64,
    pub expected_value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    /// `C_n C_3` has a smaller hitting-form constant than `K_n` (needs `n >= 4`).
    pub chord_below_complete: Option<ChordVsComplete>,
    /// Among barbells on `n` vertices the non-backtracking constant peaks at
    /// `CB(2, ceil(n/2), floor(n/2))` (needs `n >= 6`).
    pub nb_barbell_argmax: Option<ArgmaxCheck>,
    /// The simple-walk constant peaks at `CB(n - 4, 3, 3)` (needs `n >= 6`).
    pub srw_barbell_argmax: Option<ArgmaxCheck>,
}

impl ExtremalReport {
    pub fn all_hold(&self) -> bool {
        self.chord_below_complete.as_ref().is_none_or(|c| c.holds)
            && self.nb_barbell_argmax.as_ref().is_none_or(|c| c.holds)
            && self.srw_barbell_argmax.as_ref().is_none_or(|c| c.holds)
    }
}

fn argmax(
    candidates: &[FamilySpec],
    expected: FamilySpec,
    value: impl Fn(&FamilySpec) -> Result<f64>,
) -> Result<ArgmaxCheck> {
    let values: Vec<f64> = candidates.iter().map(&value).collect::<Result<_>>()?;
    let best_value = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let found: Vec<FamilySpec> = candidates
        .iter()
        .zip(&values)
        .filter(|(_, &v)| best_value - v <= 1e-9)
        .map(|(s, _)| *s)
        .collect();
    let holds = found == [expected];
    Ok(ArgmaxCheck {
        expected,
        found,
        best_value,
        expected_value: value(&expected)?,
        holds,
    })
}

/// Checks the extremal statements at `n` through the numeric pipelines.
pub fn extremal_predicates(n: usize) -> Result<ExtremalReport> {
    let chord_below_complete = if n >= 4 {
        let (chord_value, _) = nb_kemeny_pair(&FamilySpec::CycleWithChord { n, k: 3 }.generate()?)?;
        let (complete_value, _) = nb_kemeny_pair(&FamilySpec::Complete { n }.generate()?)?;
        Some(ChordVsComplete {
            chord_value,
            complete_value,
            holds: chord_value < complete_value,
        })
    } else {
        None
    };
    let (nb_barbell_argmax, srw_barbell_argmax) = if n >= 6 {
        let candidates = barbells_on(n);
        let nb_expected = FamilySpec::CycleBarbell {
            k: 2,
            a: n.div_ceil(2),
            b: n / 2,
        };
        let srw_expected = FamilySpec::CycleBarbell { k: n - 4, a: 3, b: 3 };
        let nb = argmax(&candidates, nb_expected, |s| Ok(nb_kemeny_pair(&s.generate()?)?.0))?;
        let srw = argmax(&candidates, srw_expected, |s| {
            Ok(srw_analyze(&s.generate()?)?.kemeny_hitting)
        })?;
        (Some(nb), Some(srw))
    } else {
        (None, None)
    };
    Ok(ExtremalReport {
        n,
        chord_below_complete,
        nb_barbell_argmax,
        srw_barbell_argmax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn q(x: i128) -> Q {
        Q::from_integer(x)
    }

    fn to_f64(r: Q) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn complete_examples() {
        assert_eq!(kn_nb(4).unwrap(), 1.75);
        assert_eq!(kn_srw(4).unwrap(), 2.25);
        for n in 3..20 {
            let diff = kn_srw(n).unwrap() - kn_nb(n).unwrap();
            assert!(close(diff, 1.0 - 2.0 / n as f64));
        }
        assert!(kn_nb(2).is_err());
        assert_eq!(cycle_nb(3).unwrap(), kn_nb(3).unwrap());
        assert_eq!(cycle_nb(5).unwrap(), 2.0);
    }

    #[test]
    fn chord_examples() {
        assert!(close(cnck_nb(8, 3).unwrap(), 5880.0 / 1458.0));
        for n in 5..=30 {
            for k in 3..=n / 2 {
                if k + 1 < n {
                    assert!(
                        cnck_nb(n, k).unwrap() <= cnck_nb(n, k + 1).unwrap() + 1e-12,
                        "n={n} k={k}"
                    );
                    assert!(
                        cnck_srw(n, k).unwrap() >= cnck_srw(n, k + 1).unwrap() - 1e-12,
                        "n={n} k={k}"
                    );
                }
            }
        }
        assert!(cnck_nb(5, 5).is_err());
        assert!(cnck_srw(5, 2).is_err());
    }

    #[test]
    fn barbell_examples() {
        assert!(close(cb_nb(2, 3, 3).unwrap(), 4776.0 / 1176.0));
        for k in 2..6 {
            for a in 3..8 {
                for b in 3..8 {
                    assert!(close(cb_nb(k, a, b).unwrap(), cb_nb(k, b, a).unwrap()));
                }
            }
        }
        let best = barbells_on(10)
            .into_iter()
            .map(|s| match s {
                FamilySpec::CycleBarbell { k, a, b } => (cb_nb(k, a, b).unwrap(), (k, a, b)),
                _ => unreachable!(),
            })
            .fold((f64::MIN, (0, 0, 0)), |acc, x| if x.0 > acc.0 { x } else { acc });
        assert_eq!(best.1, (2, 5, 5));
        assert!(cb_nb(1, 3, 3).is_err());
    }

    #[test]
    fn bipartite_examples() {
        assert!(close(kpq_nb(2, 3).unwrap(), 7.0 / 3.0));
        // The two formulas differ by 2 - 1/p - 1/q, positive for p, q >= 2.
        assert!(close(kpq_srw(2, 3).unwrap() - kpq_nb(2, 3).unwrap(), 7.0 / 6.0));
        for p in 2..10 {
            let pf = p as f64;
            assert!(close(kpq_nb(p, p).unwrap(), 2.0 * pf + 2.0 / pf - 3.5));
            for q in 2..10 {
                let diff = kpq_srw(p, q).unwrap() - kpq_nb(p, q).unwrap();
                assert!(close(diff, 2.0 - 1.0 / pf - 1.0 / q as f64));
                assert!(diff > 0.0);
            }
        }
        assert!(kpq_nb(1, 3).is_err());
        assert_eq!(kpq_srw(1, 1).unwrap(), 0.5);
    }

    #[test]
    fn pinwheel_examples() {
        assert_eq!(pw_srw(4, 3).unwrap(), 12.5);
        assert!(close(pw_nb(4, 3).unwrap(), 2352.0 / 360.0));
        for n in 3..30 {
            assert!(close(pw_nb(n, 1).unwrap(), cycle_nb(n).unwrap()));
        }
        // Linear versus quadratic growth in n at fixed k.
        let k = 3;
        let ratio_nb = pw_nb(400, k).unwrap() / pw_nb(200, k).unwrap();
        let ratio_srw = pw_srw(400, k).unwrap() / pw_srw(200, k).unwrap();
        assert!((ratio_nb - 2.0).abs() < 0.05);
        assert!((ratio_srw - 4.0).abs() < 0.05);
        assert!(pw_nb(2, 3).is_err());
    }

    #[test]
    fn closed_form_dispatch() {
        let r = closed_form(&FamilySpec::CycleBarbell { k: 2, a: 3, b: 3 }).unwrap();
        assert_eq!(r.nb_formula, Some("cycle_barbell_nb"));
        assert!(r.srw_value.is_none());
        let r = closed_form(&FamilySpec::CompleteBipartite { p: 1, q: 4 }).unwrap();
        assert!(r.nb_value.is_none());
        assert_eq!(r.srw_value, Some(3.5));
        assert!(closed_form(&FamilySpec::Cycle { n: 2 }).is_err());
    }

    // Exact rational evaluation of the same expressions on five points per
    // family, to rule out cancellation in the floating-point versions.

    fn cnck_nb_q(n: i128, k: i128) -> Q {
        let num = 10 * n.pow(3) + n * n * (3 * k + 6) - n * (3 * k * k - 9 * k + 22) - 3 * k * k + 6 * k - 15;
        Q::new(num, 18 * (n + 1).pow(2))
    }

    fn cnck_srw_q(n: i128, k: i128) -> Q {
        let num = k * n.pow(4) - (2 * k * k - 6 * k + 2) * n.pow(3) + (2 * k.pow(3) - 12 * k * k + 15 * k - 6) * n * n
            - (k.pow(4) - 12 * k.pow(3) + 27 * k * k - 21 * k + 7) * n
            - 4 * k.pow(4)
            + 16 * k.pow(3)
            - 23 * k * k
            + 14 * k
            - 3;
        Q::new(num, 6 * (n + 1) * (k * (n + 2) - k * k - 1))
    }

    fn cb_nb_q(k: i128, a: i128, b: i128) -> Q {
        let num = 13 * a.pow(3)
            + 13 * b.pow(3)
            + b * b * (60 * k - 87)
            + a * a * (60 * b + 60 * k - 87)
            + 2 * b * (24 * k * k - 72 * k + 49)
            + 4 * (4 * k.pow(3) - 15 * k * k + 20 * k - 9)
            + 2 * a * (49 + 30 * b * b - 72 * k + 24 * k * k + 12 * b * (4 * k - 7));
        Q::new(num, 24 * (a + b + k - 1).pow(2))
    }

    fn pw_nb_q(n: i128, k: i128) -> Q {
        let num = (n - 1) * (12 * k.pow(3) * n - 18 * k * k * n + 13 * k * n - 2 * k - 4 * n + 2);
        Q::new(num, 6 * k * n * (2 * k - 1))
    }

    #[test]
    fn rational_spot_checks() {
        for n in [4, 7, 10, 50, 1000] {
            assert!(close(
                kn_nb(n).unwrap(),
                to_f64(q(n as i128) - 3 + Q::new(3, n as i128))
            ));
            assert!(close(
                kn_srw(n).unwrap(),
                to_f64(q(n as i128) - 2 + Q::new(1, n as i128))
            ));
            assert!(close(cycle_srw(n).unwrap(), to_f64(Q::new((n * n - 1) as i128, 6))));
        }
        for (p, r) in [(2, 2), (2, 3), (3, 5), (6, 6), (40, 90)] {
            let (pq, rq) = (p as i128, r as i128);
            let exact = q(pq + rq) + Q::new(1, pq) + Q::new(1, rq) - Q::new(7, 2);
            assert!(close(kpq_nb(p, r).unwrap(), to_f64(exact)));
            assert!(close(kpq_srw(p, r).unwrap(), to_f64(q(pq + rq) - Q::new(3, 2))));
        }
        for (n, k) in [(4, 3), (8, 3), (9, 5), (14, 13), (300, 150)] {
            assert!(close(cnck_nb(n, k).unwrap(), to_f64(cnck_nb_q(n as i128, k as i128))));
            assert!(close(cnck_srw(n, k).unwrap(), to_f64(cnck_srw_q(n as i128, k as i128))));
        }
        assert_eq!(cnck_nb_q(8, 3), Q::new(5880, 1458));
        for (k, a, b) in [(2, 3, 3), (2, 5, 5), (6, 3, 3), (4, 7, 3), (100, 200, 50)] {
            assert!(close(
                cb_nb(k, a, b).unwrap(),
                to_f64(cb_nb_q(k as i128, a as i128, b as i128))
            ));
        }
        assert_eq!(cb_nb_q(2, 3, 3), Q::new(4776, 1176));
        for (n, k) in [(3, 1), (4, 3), (5, 2), (7, 4), (200, 30)] {
            assert!(close(pw_nb(n, k).unwrap(), to_f64(pw_nb_q(n as i128, k as i128))));
            let exact = Q::new((2 * k as i128 - 1) * (n as i128 * n as i128 - 1), 6);
            assert!(close(pw_srw(n, k).unwrap(), to_f64(exact)));
        }
        assert_eq!(pw_nb_q(4, 3), Q::new(2352, 360));
        // Symmetry of the chord formula under k -> n + 2 - k (the two arcs of the cycle).
        for n in 5..20i128 {
            for k in 3..n - 1 {
                assert_eq!(cnck_nb_q(n, k), cnck_nb_q(n, n + 2 - k));
            }
        }
    }

    #[test]
    fn barbell_enumeration() {
        assert_eq!(barbells_on(5), vec![]);
        assert_eq!(barbells_on(6), vec![FamilySpec::CycleBarbell { k: 2, a: 3, b: 3 }]);
        for n in 6..20 {
            for s in barbells_on(n) {
                assert_eq!(s.vertex_count(), n);
                s.validate().unwrap();
            }
        }
    }

    #[test]
    fn extremal_small() {
        let r = extremal_predicates(8).unwrap();
        let c = r.chord_below_complete.as_ref().unwrap();
        assert!(c.holds);
        assert!(close(c.complete_value, 5.375));
        assert!(r.all_hold(), "{r:?}");
        let r = extremal_predicates(4).unwrap();
        assert!(r.nb_barbell_argmax.is_none());
        assert!(r.all_hold());
    }
}
