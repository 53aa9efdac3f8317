use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

use super::{sectional_curvature, TangentVector};
use crate::error::{Error, Result};
use crate::metric::MetricModel;
use crate::quaternion::GroundField;
use crate::rng;

/// Number of best random planes refined by ascent.
const ASCENT_RESTARTS: usize = 16;
const FD_STEP: f64 = 1e-5;
const STALL_GAIN: f64 = 1e-12;

/// An orthonormal pair spanning a plane, with its sectional curvature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaneSample {
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    pub curvature: f64,
}

impl PlaneSample {
    fn new(v1: &TangentVector, v2: &TangentVector, curvature: f64) -> Self {
        Self { v1: v1.iter().copied().collect(), v2: v2.iter().copied().collect(), curvature }
    }

    pub fn vectors(&self) -> (TangentVector, TangentVector) {
        (DVector::from_column_slice(&self.v1), DVector::from_column_slice(&self.v2))
    }
}

/// Upper bound for the sectional curvature of the scaled metric: `(3+4√2)/2` for sp(n,1),
/// `13/4` for su(n,1); for so(n,1) `¼` (n = 2), `13/4` (n = 3) and `(3+4√2)/2` (n ≥ 4).
pub fn curvature_bound(field: GroundField, n: usize) -> Result<f64> {
    let h = (3.0 + 4.0 * 2f64.sqrt()) / 2.0;
    match (field, n) {
        (_, 0) => Err(Error::Domain("rank n must be at least 1".into())),
        (GroundField::Quaternion, _) => Ok(h),
        (GroundField::Complex, _) => Ok(13.0 / 4.0),
        (GroundField::Real, 1) => Err(Error::Domain("so(1,1) has no curvature bound (degenerate)".into())),
        (GroundField::Real, 2) => Ok(0.25),
        (GroundField::Real, 3) => Ok(13.0 / 4.0),
        (GroundField::Real, _) => Ok(h),
    }
}

/// Orthonormalize `(x, y)` for the active metric; `None` if the pair is degenerate.
fn orthonormal(metric: &MetricModel, x: &TangentVector, y: &TangentVector) -> Option<(TangentVector, TangentVector)> {
    let nx = metric.norm(x);
    if nx == 0.0 || !nx.is_finite() {
        return None;
    }
    let x = x / nx;
    let y = y - &x * metric.dot(y, &x);
    let ny = metric.norm(&y);
    if ny <= 1e-8 * nx {
        return None;
    }
    Some((x, y / ny))
}

/// Maximum over all planes spanned by two basis elements.
pub fn basis_plane_scan(metric: &MetricModel) -> (f64, PlaneSample) {
    let alg = metric.algebra();
    let dim = metric.dim();
    let best = (0..dim)
        .into_par_iter()
        .flat_map_iter(|i| ((i + 1)..dim).map(move |j| (i, j)))
        .map(|(i, j)| {
            let k = sectional_curvature(metric, &alg.unit(i), &alg.unit(j)).expect("basis pairs span planes");
            (k, i, j)
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a });
    match best {
        Some((k, i, j)) => {
            let (x, y) = orthonormal(metric, &alg.unit(i), &alg.unit(j)).expect("basis pairs span planes");
            (k, PlaneSample::new(&x, &y, k))
        }
        None => (f64::NEG_INFINITY, PlaneSample { v1: vec![], v2: vec![], curvature: f64::NEG_INFINITY }),
    }
}

fn curvature_or_min(metric: &MetricModel, x: &TangentVector, y: &TangentVector) -> f64 {
    sectional_curvature(metric, x, y).unwrap_or(f64::NEG_INFINITY)
}

/// Finite-difference gradient ascent of `K` on pairs, re-orthonormalized after each step.
fn ascend(metric: &MetricModel, x: TangentVector, y: TangentVector, iters: usize) -> (f64, TangentVector, TangentVector) {
    let dim = metric.dim();
    let (mut x, mut y) = (x, y);
    let mut k = curvature_or_min(metric, &x, &y);
    let mut eta = 0.1;
    for _ in 0..iters {
        let mut gx = DVector::zeros(dim);
        let mut gy = DVector::zeros(dim);
        for i in 0..dim {
            let mut e = DVector::zeros(dim);
            e[i] = FD_STEP;
            gx[i] = (curvature_or_min(metric, &(&x + &e), &y) - curvature_or_min(metric, &(&x - &e), &y)) / (2.0 * FD_STEP);
            gy[i] = (curvature_or_min(metric, &x, &(&y + &e)) - curvature_or_min(metric, &x, &(&y - &e))) / (2.0 * FD_STEP);
        }
        let gnorm = (gx.norm_squared() + gy.norm_squared()).sqrt();
        if !gnorm.is_finite() || gnorm == 0.0 {
            break;
        }
        let mut step = eta;
        let mut accepted = None;
        for _ in 0..40 {
            if let Some((nx, ny)) = orthonormal(metric, &(&x + &gx * (step / gnorm)), &(&y + &gy * (step / gnorm))) {
                let nk = curvature_or_min(metric, &nx, &ny);
                if nk > k {
                    accepted = Some((nk, nx, ny));
                    break;
                }
            }
            step *= 0.5;
        }
        let Some((nk, nx, ny)) = accepted else { break };
        let gain = (nk - k) / k.abs().max(1e-300);
        x = nx;
        y = ny;
        k = nk;
        eta = (step * 2.0).min(1.0);
        if gain < STALL_GAIN {
            break;
        }
    }
    (k, x, y)
}

/// Random orthonormal planes followed by ascent from the best of them and from the best
/// basis plane. The result is a lower estimate of the supremum of `K`; it is independent
/// of the number of worker threads.
pub fn global_curvature_scan(metric: &MetricModel, samples: usize, ascent_iters: usize, seed: u64) -> (f64, PlaneSample) {
    let dim = metric.dim();
    let mut sampled: Vec<(f64, usize, TangentVector, TangentVector)> = (0..samples)
        .into_par_iter()
        .filter_map(|s| {
            let mut r = rng::stream(seed, s as u64);
            let x = rng::gaussian_vector(&mut r, dim);
            let y = rng::gaussian_vector(&mut r, dim);
            let (x, y) = orthonormal(metric, &x, &y)?;
            let k = sectional_curvature(metric, &x, &y).ok()?;
            Some((k, s, x, y))
        })
        .collect();
    sampled.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let (basis_k, basis_plane) = basis_plane_scan(metric);
    let mut starts: Vec<(TangentVector, TangentVector)> =
        sampled.iter().take(ASCENT_RESTARTS).map(|(_, _, x, y)| (x.clone(), y.clone())).collect();
    if basis_k.is_finite() {
        starts.push(basis_plane.vectors());
    }

    let refined: Vec<(f64, TangentVector, TangentVector)> =
        starts.into_par_iter().map(|(x, y)| ascend(metric, x, y, ascent_iters)).collect();

    let mut best = (basis_k, basis_plane.clone());
    for (k, x, y) in sampled.iter().map(|(k, _, x, y)| (*k, x, y)).chain(refined.iter().map(|(k, x, y)| (*k, x, y))) {
        if k > best.0 {
            best = (k, PlaneSample::new(x, y, k));
        }
    }
    best
}

/// Outcome of a curvature-bound scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub field: GroundField,
    pub n: usize,
    pub bound: f64,
    pub basis_max: f64,
    pub empirical_max: f64,
    pub gap: f64,
    pub argmax_coords: PlaneSample,
    pub samples: usize,
    pub ascent_iters: usize,
    pub seed: u64,
}

impl ScanReport {
    pub fn run(metric: &MetricModel, samples: usize, ascent_iters: usize, seed: u64) -> Result<Self> {
        let bound = curvature_bound(metric.field(), metric.n())?;
        let (basis_max, _) = basis_plane_scan(metric);
        let (empirical_max, argmax_coords) = global_curvature_scan(metric, samples, ascent_iters, seed);
        Ok(Self {
            field: metric.field(),
            n: metric.n(),
            bound,
            basis_max,
            empirical_max,
            gap: bound - empirical_max,
            argmax_coords,
            samples,
            ascent_iters,
            seed,
        })
    }

    pub fn within_bound(&self, tol: f64) -> bool {
        self.empirical_max <= self.bound + tol
    }
}
