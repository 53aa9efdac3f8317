//! Killing form, the canonical and scaled inner products, and the ad-norm constants.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{CartanPart, LieAlgebraModel};
use crate::quaternion::GroundField;
use crate::rng;

/// Metric data attached to a Lie algebra model.
///
/// The standard basis is orthogonal for the Killing form with `|B(e_i, e_i)|` constant, so
/// both the canonical product `−B|_k ⊕ B|_p` and the scaled one are multiples of the
/// identity in basis coordinates.
#[derive(Debug, Clone)]
pub struct MetricModel {
    algebra: LieAlgebraModel,
    killing_diag: Vec<f64>,
    canonical_scale: f64,
    metric_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdNormEstimate {
    pub c1_est: f64,
    pub c2_est: f64,
    pub c1_argmax: Vec<f64>,
    pub c2_argmax: Vec<f64>,
}

fn trace_of_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    // tr(AB) = Σ_ij A_ij B_ji
    a.iter().zip(b.transpose().iter()).map(|(x, y)| x * y).sum()
}

impl MetricModel {
    /// Canonical metric (scale 1).
    pub fn canonical(algebra: LieAlgebraModel) -> Result<Self> {
        let ad = algebra.ad_basis();
        let killing_diag: Vec<f64> = ad.iter().map(|a| trace_of_product(a, a)).collect();
        let canonical_scale = killing_diag.first().map_or(0.0, |b| b.abs());
        if canonical_scale < 1e-12 {
            return Err(Error::Domain(format!(
                "Killing form of {} with n = {} is degenerate",
                algebra.field().algebra_name(),
                algebra.n()
            )));
        }
        for (i, b) in killing_diag.iter().enumerate() {
            let sign = match algebra.part(i) {
                CartanPart::K => -1.0,
                CartanPart::P => 1.0,
            };
            if (b * sign - canonical_scale).abs() > 1e-9 * canonical_scale {
                return Err(Error::Domain(format!(
                    "Killing form is not a uniform multiple of the trace pairing at basis index {i}: {b}"
                )));
            }
        }
        Ok(Self { algebra, killing_diag, canonical_scale, metric_scale: 1.0 })
    }

    /// Scaled metric normalized so that the symmetric-space quotient has holomorphic (or
    /// constant) sectional curvature `−1`. For sp(n,1) this is `g / (2(n+2))`; for the real
    /// and complex cases the multiplier is fitted numerically.
    pub fn scaled(algebra: LieAlgebraModel) -> Result<Self> {
        let base = Self::canonical(algebra)?;
        let scale = match base.field() {
            GroundField::Quaternion => 1.0 / (2.0 * (base.n() as f64 + 2.0)),
            _ => crate::curvature::fit_metric_scale(&base)?,
        };
        Ok(base.with_metric_scale(scale))
    }

    pub fn with_metric_scale(mut self, metric_scale: f64) -> Self {
        self.metric_scale = metric_scale;
        self
    }

    pub fn algebra(&self) -> &LieAlgebraModel {
        &self.algebra
    }

    pub fn field(&self) -> GroundField {
        self.algebra.field()
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn killing_diag(&self) -> &[f64] {
        &self.killing_diag
    }

    /// `|B(e_i, e_i)|`, equal to `8(n+2)` for sp(n,1).
    pub fn canonical_scale(&self) -> f64 {
        self.canonical_scale
    }

    pub fn metric_scale(&self) -> f64 {
        self.metric_scale
    }

    /// Diagonal entry of the active (scaled) inner product in basis coordinates.
    pub fn weight(&self) -> f64 {
        self.canonical_scale * self.metric_scale
    }

    /// `B(e_i, e_i)` signs: −1 on k, +1 on p.
    pub fn signature(&self) -> Vec<f64> {
        self.killing_diag.iter().map(|b| b.signum()).collect()
    }

    /// `trace(ad X ad Y)`.
    pub fn killing_form(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let ax = self.algebra.ad_matrix(x)?;
        let ay = self.algebra.ad_matrix(y)?;
        Ok(trace_of_product(&ax, &ay))
    }

    /// Full matrix `B(e_i, e_j)`.
    pub fn killing_matrix(&self) -> DMatrix<f64> {
        let ad = self.algebra.ad_basis();
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |i, j| trace_of_product(&ad[i], &ad[j]))
    }

    /// Canonical product, times `metric_scale` when `scaled`.
    pub fn inner_product(&self, x: &DVector<f64>, y: &DVector<f64>, scaled: bool) -> Result<f64> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let s = if scaled { self.metric_scale } else { 1.0 };
        Ok(self.canonical_scale * s * x.dot(y))
    }

    /// Scaled inner product without length checks.
    pub fn dot(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.weight() * x.dot(y)
    }

    pub fn norm(&self, x: &DVector<f64>) -> f64 {
        self.dot(x, x).sqrt()
    }

    /// Largest `|B([X,Y],Z) + B(Y,[X,Z])|` over seeded Gaussian triples, relative to
    /// `canonical_scale · |X| |Y| |Z|` in coordinate norms.
    pub fn verify_killing_invariance(&self, trials: usize, seed: u64) -> f64 {
        let dim = self.dim();
        let alg = &self.algebra;
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut r = rng::stream(seed, t as u64);
                let x = rng::gaussian_vector(&mut r, dim);
                let y = rng::gaussian_vector(&mut r, dim);
                let z = rng::gaussian_vector(&mut r, dim);
                let lhs = self.killing_form(&alg.bracket(&x, &y), &z).expect("lengths match")
                    + self.killing_form(&y, &alg.bracket(&x, &z)).expect("lengths match");
                lhs.abs() / (self.canonical_scale * x.norm() * y.norm() * z.norm())
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Lower estimates of `C₁ = sup_{X∈p, |X|=1} N(ad X)` and `C₂` (the same over k) for
    /// the active metric.
    ///
    /// Each restart alternates between the top singular pair `(u, v)` of `Σ a_i ad e_i` and
    /// the coefficient update `a ← g/|g|`, `g_i = uᵀ (ad e_i) v`; the operator norm never
    /// decreases along this iteration. Restarts are the normalized basis vectors of the
    /// part plus `samples` seeded Gaussian directions.
    pub fn estimate_c1_c2(&self, samples: usize, ascent_iters: usize, seed: u64) -> AdNormEstimate {
        let (c1_est, c1_argmax) = self.sup_ad_norm(CartanPart::P, samples, ascent_iters, seed);
        let (c2_est, c2_argmax) = self.sup_ad_norm(CartanPart::K, samples, ascent_iters, rng::derive_seed(seed, 1 << 32));
        AdNormEstimate { c1_est, c2_est, c1_argmax, c2_argmax }
    }

    fn sup_ad_norm(&self, part: CartanPart, samples: usize, iters: usize, seed: u64) -> (f64, Vec<f64>) {
        let idx = self.algebra.indices_of(part);
        if idx.is_empty() {
            return (0.0, vec![0.0; self.dim()]);
        }
        // ad matrices in an orthonormal frame: the metric is scalar, so the frame change
        // only rescales the generator, |e_i| = sqrt(weight).
        let unit = 1.0 / self.weight().sqrt();
        let gens: Vec<DMatrix<f64>> = idx.iter().map(|&i| &self.algebra.ad_basis()[i] * unit).collect();
        let m = idx.len();

        let starts: Vec<DVector<f64>> = (0..m)
            .map(|i| {
                let mut a = DVector::zeros(m);
                a[i] = 1.0;
                a
            })
            .chain((0..samples).map(|s| {
                let mut r = rng::stream(seed, s as u64);
                let g = rng::gaussian_vector(&mut r, m);
                let nrm = g.norm();
                g / nrm
            }))
            .collect();

        let (best, a) = starts
            .into_par_iter()
            .map(|a0| ascend_singular(&gens, a0, iters))
            .reduce_with(|p, q| if q.0 > p.0 { q } else { p })
            .expect("at least one start");

        let mut coords = vec![0.0; self.dim()];
        for (k, &i) in idx.iter().enumerate() {
            coords[i] = a[k] * unit;
        }
        (best, coords)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: len });
        }
        Ok(())
    }
}

fn combine(gens: &[DMatrix<f64>], a: &DVector<f64>) -> DMatrix<f64> {
    let mut acc = DMatrix::zeros(gens[0].nrows(), gens[0].ncols());
    for (g, &c) in gens.iter().zip(a.iter()) {
        if c != 0.0 {
            acc += g * c;
        }
    }
    acc
}

fn top_singular(m: &DMatrix<f64>) -> (f64, DVector<f64>, DVector<f64>) {
    let svd = m.clone().svd(true, true);
    let (k, &s) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty matrix");
    let u = svd.u.as_ref().expect("requested").column(k).into_owned();
    let v = svd.v_t.as_ref().expect("requested").row(k).transpose();
    (s, u, v)
}

fn ascend_singular(gens: &[DMatrix<f64>], mut a: DVector<f64>, iters: usize) -> (f64, DVector<f64>) {
    let (mut sigma, mut u, mut v) = top_singular(&combine(gens, &a));
    for _ in 0..iters {
        let g = DVector::from_iterator(gens.len(), gens.iter().map(|m| u.dot(&(m * &v))));
        let gn = g.norm();
        if gn == 0.0 {
            break;
        }
        let next = g / gn;
        let (s, nu, nv) = top_singular(&combine(gens, &next));
        if s <= sigma * (1.0 + 1e-10) {
            if s > sigma {
                sigma = s;
                a = next;
            }
            break;
        }
        sigma = s;
        a = next;
        u = nu;
        v = nv;
    }
    (sigma, a)
}
