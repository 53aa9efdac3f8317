//! Check of the printed sp(n,1) bracket table against direct matrix commutators.

use serde::Serialize;

use super::basis::{alpha, beta, diag_unit};
use super::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::matrix::{mat_bracket, QuaternionMatrix, MATRIX_TOL};
use crate::quaternion::{GroundField, Quaternion};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityFailure {
    /// 1-based `(j, k, l, m, i, t, s)`-style indices of the tuple, in family order.
    pub indices: Vec<usize>,
    pub max_abs_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub tuples_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub families: Vec<FamilyReport>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }
}

type M = QuaternionMatrix;

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn unit(t: usize) -> Quaternion {
    Quaternion::unit(t as u8)
}

struct Checker {
    families: Vec<FamilyReport>,
}

impl Checker {
    fn family<I, F>(&mut self, name: &str, tuples: I, f: F)
    where
        I: IntoIterator<Item = Vec<usize>>,
        F: Fn(&[usize]) -> (M, M, M),
    {
        let mut report = FamilyReport { family: name.to_string(), tuples_checked: 0, failures: Vec::new() };
        for idx in tuples {
            let (a, b, rhs) = f(&idx);
            let lhs = mat_bracket(&a, &b).expect("equal square sizes");
            let dev = lhs.max_abs_diff(&rhs);
            report.tuples_checked += 1;
            if dev > MATRIX_TOL {
                report.failures.push(IdentityFailure { indices: idx, max_abs_deviation: dev });
            }
        }
        self.families.push(report);
    }

}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|j| ((j + 1)..=n).map(move |k| (j, k))).collect()
}

fn distinct_units() -> Vec<(usize, usize)> {
    (1..=3).flat_map(|t| (1..=3).filter(move |&s| s != t).map(move |s| (t, s))).collect()
}

/// Linear combination `Σ c_i M_i`.
fn combo(size: usize, terms: &[(f64, M)]) -> M {
    terms.iter().fold(M::zeros(size, size), |acc, (c, m)| if *c == 0.0 { acc } else { &acc + &m.scale(*c) })
}

/// Evaluate both sides of every family of the sp(n,1) bracket table over all admissible
/// index tuples (`j < k ≤ n`, `l < m ≤ n`, `i ≤ n + 1`, `t ≠ s`).
///
/// Mismatches are recorded in the report; the matrix commutator is taken as ground truth.
pub fn verify_bracket_identities(model: &LieAlgebraModel) -> Result<IdentityReport> {
    if model.field() != GroundField::Quaternion {
        return Err(Error::Domain(format!("bracket table is stated for sp(n,1), got {}", model.field().algebra_name())));
    }
    Ok(bracket_table(model.n()))
}

fn bracket_table(n: usize) -> IdentityReport {
    let size = n + 1;
    let last = n + 1;
    let al = |j: usize, k: usize| alpha(size, j, k);
    let be = |j: usize, k: usize| beta(size, j, k);
    let e = |i: usize| diag_unit(size, i);
    let mut c = Checker { families: Vec::new() };

    let pp: Vec<(usize, usize, usize, usize)> =
        pairs(n).iter().flat_map(|&(j, k)| pairs(n).into_iter().map(move |(l, m)| (j, k, l, m))).collect();
    let ts = distinct_units();

    c.family("alal", pp.iter().map(|&(j, k, l, m)| vec![j, k, l, m]), |x| {
        let (j, k, l, m) = (x[0], x[1], x[2], x[3]);
        let rhs = combo(
            size,
            &[(delta(k, l), al(j, m)), (delta(k, m), al(l, j)), (delta(j, m), al(k, l)), (delta(l, j), al(m, k))],
        );
        (al(j, k), al(l, m), rhs)
    });

    c.family(
        "albeI",
        pp.iter().flat_map(|&(j, k, l, m)| (1..=3).map(move |t| vec![j, k, l, m, t])),
        |x| {
            let (j, k, l, m, t) = (x[0], x[1], x[2], x[3], x[4]);
            let inner = combo(
                size,
                &[(delta(k, l), be(j, m)), (delta(k, m), be(j, l)), (-delta(j, m), be(k, l)), (-delta(l, j), be(k, m))],
            );
            (al(j, k), be(l, m).left_scale(unit(t)), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "aleI",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=last).flat_map(move |i| (1..=3).map(move |t| vec![j, k, i, t]))),
        |x| {
            let (j, k, i, t) = (x[0], x[1], x[2], x[3]);
            let inner = combo(size, &[(delta(k, i), be(j, i)), (-delta(j, i), be(k, i))]);
            (al(j, k), e(i).left_scale(unit(t)), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "albeP",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=n).map(move |l| vec![j, k, l])),
        |x| {
            let (j, k, l) = (x[0], x[1], x[2]);
            let rhs = combo(size, &[(delta(l, k), be(j, last)), (-delta(j, l), be(k, last))]);
            (al(j, k), be(l, last), rhs)
        },
    );

    c.family(
        "alIalP",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=n).flat_map(move |l| (1..=3).map(move |t| vec![j, k, l, t]))),
        |x| {
            let (j, k, l, t) = (x[0], x[1], x[2], x[3]);
            let inner = combo(size, &[(delta(l, k), al(j, last)), (-delta(l, j), al(k, last))]);
            (al(j, k), al(l, last).left_scale(unit(t)), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "IbeIbe",
        pp.iter().flat_map(|&(j, k, l, m)| (1..=3).map(move |t| vec![j, k, l, m, t])),
        |x| {
            let (j, k, l, m, t) = (x[0], x[1], x[2], x[3], x[4]);
            let rhs = combo(
                size,
                &[
                    (-delta(k, l), al(j, m)),
                    (-delta(k, m), al(j, l)),
                    (-delta(j, m), al(k, l)),
                    (-delta(l, j), al(k, m)),
                ],
            );
            (be(j, k).left_scale(unit(t)), be(l, m).left_scale(unit(t)), rhs)
        },
    );

    c.family(
        "IbeJbe",
        pp.iter().flat_map(|&(j, k, l, m)| ts.iter().map(move |&(t, s)| vec![j, k, l, m, t, s])),
        |x| {
            let (j, k, l, m, t, s) = (x[0], x[1], x[2], x[3], x[4], x[5]);
            let inner = combo(
                size,
                &[(delta(k, l), be(j, m)), (delta(k, m), be(j, l)), (delta(j, m), be(k, l)), (delta(l, j), be(k, m))],
            );
            (be(j, k).left_scale(unit(t)), be(l, m).left_scale(unit(s)), inner.left_scale(unit(t) * unit(s)))
        },
    );

    c.family(
        "IbeIe",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=last).flat_map(move |i| (1..=3).map(move |t| vec![j, k, i, t]))),
        |x| {
            let (j, k, i, t) = (x[0], x[1], x[2], x[3]);
            let rhs = combo(size, &[(-delta(k, i), al(j, i)), (-delta(j, i), al(k, i))]);
            (be(j, k).left_scale(unit(t)), e(i).left_scale(unit(t)), rhs)
        },
    );

    c.family(
        "IbeJe",
        pairs(n).into_iter().flat_map(|(j, k)| {
            let ts = ts.clone();
            (1..=last).flat_map(move |i| ts.clone().into_iter().map(move |(t, s)| vec![j, k, i, t, s]))
        }),
        |x| {
            let (j, k, i, t, s) = (x[0], x[1], x[2], x[3], x[4]);
            let inner = combo(size, &[(delta(k, i), be(j, i)), (delta(j, i), be(k, i))]);
            (be(j, k).left_scale(unit(t)), e(i).left_scale(unit(s)), inner.left_scale(unit(t) * unit(s)))
        },
    );

    c.family(
        "IbebeP",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=n).flat_map(move |l| (1..=3).map(move |t| vec![j, k, l, t]))),
        |x| {
            let (j, k, l, t) = (x[0], x[1], x[2], x[3]);
            let inner = combo(size, &[(delta(l, k), al(j, last)), (delta(j, l), al(k, last))]);
            (be(j, k).left_scale(unit(t)), be(l, last), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "IbeIalP",
        pairs(n).into_iter().flat_map(|(j, k)| (1..=n).flat_map(move |l| (1..=3).map(move |t| vec![j, k, l, t]))),
        |x| {
            let (j, k, l, t) = (x[0], x[1], x[2], x[3]);
            let rhs = combo(size, &[(-delta(l, k), be(j, last)), (-delta(j, l), be(k, last))]);
            (be(j, k).left_scale(unit(t)), al(l, last).left_scale(unit(t)), rhs)
        },
    );

    c.family(
        "IbeJalP",
        pairs(n).into_iter().flat_map(|(j, k)| {
            let ts = ts.clone();
            (1..=n).flat_map(move |l| ts.clone().into_iter().map(move |(t, s)| vec![j, k, l, t, s]))
        }),
        |x| {
            let (j, k, l, t, s) = (x[0], x[1], x[2], x[3], x[4]);
            let inner = combo(size, &[(delta(l, k), al(j, last)), (delta(j, l), al(k, last))]);
            (be(j, k).left_scale(unit(t)), al(l, last).left_scale(unit(s)), inner.left_scale(unit(t) * unit(s)))
        },
    );

    c.family("IeIe", (1..=last).flat_map(|i| (1..=3).map(move |t| vec![i, t])), |x| {
        let (i, t) = (x[0], x[1]);
        (e(i).left_scale(unit(t)), e(i).left_scale(unit(t)), M::zeros(size, size))
    });

    c.family("IeJe", (1..=last).flat_map(|i| ts.clone().into_iter().map(move |(t, s)| vec![i, t, s])), |x| {
        let (i, t, s) = (x[0], x[1], x[2]);
        (e(i).left_scale(unit(t)), e(i).left_scale(unit(s)), e(i).left_scale((unit(t) * unit(s)).scale(2.0)))
    });

    c.family(
        "IebeP",
        (1..=last).flat_map(|i| (1..=n).flat_map(move |j| (1..=3).map(move |t| vec![i, j, t]))),
        |x| {
            let (i, j, t) = (x[0], x[1], x[2]);
            let inner = combo(size, &[(delta(i, j), al(i, last)), (delta(i, last), al(i, j))]);
            (e(i).left_scale(unit(t)), be(j, last), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "IeIalP",
        (1..=last).flat_map(|i| (1..=n).flat_map(move |j| (1..=3).map(move |t| vec![i, j, t]))),
        |x| {
            let (i, j, t) = (x[0], x[1], x[2]);
            let rhs = combo(size, &[(-delta(i, j), be(i, last)), (delta(i, last), be(i, j))]);
            (e(i).left_scale(unit(t)), al(j, last).left_scale(unit(t)), rhs)
        },
    );

    c.family(
        "IeJalP",
        (1..=last).flat_map(|i| {
            let ts = ts.clone();
            (1..=n).flat_map(move |j| ts.clone().into_iter().map(move |(t, s)| vec![i, j, t, s]))
        }),
        |x| {
            let (i, j, t, s) = (x[0], x[1], x[2], x[3]);
            let inner = combo(size, &[(delta(i, j), al(i, last)), (-delta(i, last), al(i, j))]);
            (e(i).left_scale(unit(t)), al(j, last).left_scale(unit(s)), inner.left_scale(unit(t) * unit(s)))
        },
    );

    c.family("bePbeP", (1..=n).flat_map(|j| (1..=n).map(move |k| vec![j, k])), |x| {
        let (j, k) = (x[0], x[1]);
        (be(j, last), be(k, last), al(j, k))
    });

    c.family(
        "bePIalP",
        (1..=n).flat_map(|j| (1..=n).flat_map(move |k| (1..=3).map(move |t| vec![j, k, t]))),
        |x| {
            let (j, k, t) = (x[0], x[1], x[2]);
            let inner = combo(size, &[(-1.0, be(j, k)), (2.0 * delta(j, k), e(last))]);
            (be(j, last), al(k, last).left_scale(unit(t)), inner.left_scale(unit(t)))
        },
    );

    c.family(
        "IalPIalP",
        (1..=n).flat_map(|j| (1..=n).flat_map(move |k| (1..=3).map(move |t| vec![j, k, t]))),
        |x| {
            let (j, k, t) = (x[0], x[1], x[2]);
            (al(j, last).left_scale(unit(t)), al(k, last).left_scale(unit(t)), al(j, k))
        },
    );

    c.family(
        "IalPJalP",
        (1..=n).flat_map(|j| {
            let ts = ts.clone();
            (1..=n).flat_map(move |k| ts.clone().into_iter().map(move |(t, s)| vec![j, k, t, s]))
        }),
        |x| {
            let (j, k, t, s) = (x[0], x[1], x[2], x[3]);
            let inner = combo(size, &[(1.0, be(j, k)), (2.0 * delta(j, k), e(last))]);
            (al(j, last).left_scale(unit(t)), al(k, last).left_scale(unit(s)), inner.left_scale(unit(s) * unit(t)))
        },
    );

    IdentityReport { n, families: c.families }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_has_every_family() {
        let r = bracket_table(3);
        assert_eq!(r.families.len(), 21);
        assert!(r.families.iter().all(|f| f.tuples_checked > 0));
    }

    #[test]
    fn rank_one_off_diagonal_families_are_vacuous() {
        let r = bracket_table(1);
        for name in ["alal", "albeI", "aleI", "IbeIbe", "IbeJbe", "IbeJalP"] {
            let f = r.family(name).unwrap();
            assert_eq!(f.tuples_checked, 0, "{name}");
            assert!(f.passed());
        }
    }

    #[test]
    fn non_quaternion_field_rejected() {
        let m = LieAlgebraModel::build(GroundField::Complex, 2).unwrap();
        assert!(verify_bracket_identities(&m).is_err());
    }

    #[test]
    fn alal_holds_at_rank_two() {
        let r = bracket_table(2);
        let f = r.family("alal").unwrap();
        assert_eq!(f.tuples_checked, 1);
        assert!(f.passed());
    }
}
