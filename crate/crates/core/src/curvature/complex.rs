use nalgebra::DVector;
use serde::Serialize;

use super::{sectional_curvature, TangentVector};
use crate::error::{Error, Result};
use crate::lie::{BasisKind, CartanPart, LieAlgebraModel};
use crate::metric::MetricModel;
use crate::quaternion::GroundField;
use crate::rng;

/// Coordinates of `(β_{j,n+1}, I_1 α_{j,n+1}, I_2 α_{j,n+1}, I_3 α_{j,n+1})` for each `j`,
/// truncated to the units present in the field.
fn p_blocks(alg: &LieAlgebraModel) -> Vec<Vec<usize>> {
    (1..=alg.n())
        .map(|j| {
            let mut block = vec![alg.index_of(BasisKind::BetaP { j }).expect("basis has β_{j,n+1}")];
            for &t in alg.field().imaginary_units() {
                block.push(alg.index_of(BasisKind::ImAlphaP { t, j }).expect("basis has I_t α_{j,n+1}"));
            }
            block
        })
        .collect()
}

/// Complex structure on p: per block, `(a₁, a₂, a₃, a₄) ↦ (a₂, −a₁, −a₄, a₃)`
/// (quaternionic) or `(a₁, a₂) ↦ (a₂, −a₁)` (complex). This is right multiplication by
/// `−i` on the last column.
pub fn complex_structure_apply(metric: &MetricModel, x: &TangentVector) -> Result<TangentVector> {
    let alg = metric.algebra();
    if alg.field() == GroundField::Real {
        return Err(Error::Domain("so(n,1) carries no complex structure on p".into()));
    }
    if x.len() != alg.dim() {
        return Err(Error::Dimension { expected: alg.dim(), got: x.len() });
    }
    let k = alg.project(x, CartanPart::K);
    if k.amax() > 1e-12 * x.amax().max(1.0) {
        return Err(Error::Domain("complex structure is defined on p only".into()));
    }
    let mut out = DVector::zeros(alg.dim());
    for b in p_blocks(alg) {
        if b.len() == 4 {
            out[b[0]] = x[b[1]];
            out[b[1]] = -x[b[0]];
            out[b[2]] = -x[b[3]];
            out[b[3]] = x[b[2]];
        } else {
            out[b[0]] = x[b[1]];
            out[b[1]] = -x[b[0]];
        }
    }
    Ok(out)
}

/// Base curvature of the symmetric-space quotient along the plane `(x, y) ⊂ p` via
/// O'Neill: `K_base = K + ¾ |[x,y]_k|² / Gram` (the bracket of two p vectors lies in k).
pub(crate) fn quotient_curvature(metric: &MetricModel, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    let total = sectional_curvature(metric, x, y)?;
    let v = metric.algebra().bracket(x, y);
    let gram = metric.dot(x, x) * metric.dot(y, y) - metric.dot(x, y).powi(2);
    Ok(total + 0.75 * metric.dot(&v, &v) / gram)
}

fn reference_plane(metric: &MetricModel) -> Result<(TangentVector, TangentVector)> {
    let alg = metric.algebra();
    let x = alg.unit(alg.index_of(BasisKind::BetaP { j: 1 }).expect("n ≥ 1"));
    let y = match alg.field() {
        GroundField::Real => match alg.index_of(BasisKind::BetaP { j: 2 }) {
            Some(i) => alg.unit(i),
            None => return Err(Error::Domain("so(1,1) has one-dimensional p".into())),
        },
        _ => complex_structure_apply(metric, &x)?,
    };
    Ok((x, y))
}

/// Multiplier of the canonical metric for which the quotient curvature along the reference
/// plane equals `−1`: `(β₁, Jβ₁)` for the complex and quaternionic cases, `(β₁, β₂)` for
/// the real case. Found by bisection in `ln s`.
pub fn fit_metric_scale(metric: &MetricModel) -> Result<f64> {
    let (x, y) = reference_plane(metric)?;
    let base = metric.clone();
    let at = |ln_s: f64| -> Result<f64> {
        let m = base.clone().with_metric_scale(ln_s.exp());
        Ok(quotient_curvature(&m, &x, &y)? + 1.0)
    };
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    let (flo, fhi) = (at(lo)?, at(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::Domain("quotient curvature is not negative along the reference plane".into()));
    }
    let rising = flo < fhi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = at(mid)?;
        if f == 0.0 {
            return Ok(mid.exp());
        }
        if (f < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolomorphicCheck {
    pub trials: usize,
    /// `max |‖[X, JX]‖² − 1|`.
    pub bracket_deviation: f64,
    /// `max |K_base(X, JX) + 1|`.
    pub base_curvature_deviation: f64,
}

impl HolomorphicCheck {
    pub fn max_deviation(&self) -> f64 {
        self.bracket_deviation.max(self.base_curvature_deviation)
    }
}

/// Random unit `X ∈ p`, `Y = JX`: checks `‖[X,Y]‖² = 1` and that the quotient curvature
/// is `−1`. In the real case `Y` is a random unit vector of p orthogonal to `X` and only
/// the quotient curvature is checked.
pub fn verify_holomorphic_normalization(metric: &MetricModel, trials: usize, seed: u64) -> Result<HolomorphicCheck> {
    let alg = metric.algebra();
    let p = alg.indices_of(CartanPart::P);
    if alg.field() == GroundField::Real && p.len() < 2 {
        return Err(Error::Domain("so(1,1) has one-dimensional p".into()));
    }
    let mut check = HolomorphicCheck { trials, bracket_deviation: 0.0, base_curvature_deviation: 0.0 };
    for t in 0..trials {
        let mut r = rng::stream(seed, t as u64);
        let g = rng::gaussian_on(&mut r, alg.dim(), &p);
        let x = &g / metric.norm(&g);
        let y = if alg.field() == GroundField::Real {
            let h = rng::gaussian_on(&mut r, alg.dim(), &p);
            let h = &h - &x * metric.dot(&h, &x);
            &h / metric.norm(&h)
        } else {
            let y = complex_structure_apply(metric, &x)?;
            let b = alg.bracket(&x, &y);
            check.bracket_deviation = check.bracket_deviation.max((metric.dot(&b, &b) - 1.0).abs());
            y
        };
        let kb = quotient_curvature(metric, &x, &y)?;
        check.base_curvature_deviation = check.base_curvature_deviation.max((kb + 1.0).abs());
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(field: GroundField, n: usize) -> MetricModel {
        MetricModel::scaled(LieAlgebraModel::build(field, n).unwrap()).unwrap()
    }

    #[test]
    fn j_of_beta_is_minus_i_alpha() {
        let m = model(GroundField::Quaternion, 2);
        let alg = m.algebra();
        let x = alg.unit(alg.index_of(BasisKind::BetaP { j: 1 }).unwrap());
        let want = -alg.unit(alg.index_of(BasisKind::ImAlphaP { t: 1, j: 1 }).unwrap());
        assert_eq!(complex_structure_apply(&m, &x).unwrap(), want);
    }

    #[test]
    fn j_squares_to_minus_one_and_is_isometric() {
        for field in [GroundField::Complex, GroundField::Quaternion] {
            let m = model(field, 2);
            let p = m.algebra().indices_of(CartanPart::P);
            let mut r = rng::stream(8, 0);
            let x = rng::gaussian_on(&mut r, m.dim(), &p);
            let y = rng::gaussian_on(&mut r, m.dim(), &p);
            let jx = complex_structure_apply(&m, &x).unwrap();
            let jy = complex_structure_apply(&m, &y).unwrap();
            assert!((complex_structure_apply(&m, &jx).unwrap() + &x).amax() < 1e-15);
            assert!((m.dot(&jx, &jy) - m.dot(&x, &y)).abs() < 1e-12);
            assert!(m.dot(&x, &jx).abs() < 1e-12);
        }
    }

    #[test]
    fn j_rejects_k_part_and_real_field() {
        let m = model(GroundField::Quaternion, 1);
        assert!(complex_structure_apply(&m, &m.algebra().unit(0)).is_err());
        let r = model(GroundField::Real, 2);
        assert!(complex_structure_apply(&r, &r.algebra().unit(1)).is_err());
    }

    #[test]
    fn half_beta_bracket_has_unit_norm() {
        let m = model(GroundField::Quaternion, 3);
        let alg = m.algebra();
        let x = alg.unit(alg.index_of(BasisKind::BetaP { j: 1 }).unwrap()) * 0.5;
        let b = alg.bracket(&x, &complex_structure_apply(&m, &x).unwrap());
        assert!((m.dot(&b, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fitted_scale_matches_quaternionic_closed_form() {
        for n in 1..=3 {
            let m = model(GroundField::Quaternion, n);
            let s = fit_metric_scale(&m).unwrap();
            assert!((s - 1.0 / (2.0 * (n as f64 + 2.0))).abs() < 1e-12, "n={n} s={s}");
        }
    }

    #[test]
    fn normalization_holds_for_all_fields() {
        for n in 1..=3 {
            let c = verify_holomorphic_normalization(&model(GroundField::Quaternion, n), 50, 11).unwrap();
            assert!(c.max_deviation() < 1e-9, "{c:?}");
            let c = verify_holomorphic_normalization(&model(GroundField::Complex, n), 50, 11).unwrap();
            assert!(c.max_deviation() < 1e-9, "{c:?}");
        }
        let c = verify_holomorphic_normalization(&model(GroundField::Real, 3), 50, 11).unwrap();
        assert!(c.base_curvature_deviation < 1e-9, "{c:?}");
    }
}
