//! Levi-Civita connection and curvature of the left-invariant scaled metric, sectional
//! curvature, the complex structure on p and curvature-bound scans.

mod complex;
mod scan;

pub use complex::{complex_structure_apply, fit_metric_scale, verify_holomorphic_normalization, HolomorphicCheck};
pub use scan::{basis_plane_scan, curvature_bound, global_curvature_scan, PlaneSample, ScanReport};

use nalgebra::DVector;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::CartanPart;
use crate::metric::MetricModel;
use crate::rng;

/// Tangent vector at the identity, in standard-basis coordinates.
pub type TangentVector = DVector<f64>;

/// Relative Gram threshold below which a plane is rejected.
pub const DEGENERATE_GRAM: f64 = 1e-12;

/// `∇_a b` for left-invariant fields. With `a = U + X`, `b = V + Y` (`U, V ∈ k`, `X, Y ∈ p`):
/// `½[U,V] + (3/2)[U,Y] + ½[X,Y] − ½[X,V]`.
pub fn connection(metric: &MetricModel, a: &TangentVector, b: &TangentVector) -> TangentVector {
    let alg = metric.algebra();
    let (u, x) = alg.split(a);
    let (v, y) = alg.split(b);
    (alg.bracket(&u, &v) + alg.bracket(&x, &y) - alg.bracket(&x, &v)) * 0.5 + alg.bracket(&u, &y) * 1.5
}

/// `R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_{[x,y]} z`.
pub fn curvature_via_definition(
    metric: &MetricModel,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> TangentVector {
    let xy = metric.algebra().bracket(x, y);
    connection(metric, x, &connection(metric, y, z))
        - connection(metric, y, &connection(metric, x, z))
        - connection(metric, &xy, z)
}

/// `R(x,y)z` assembled from the case formulas on k/p-pure arguments.
pub fn curvature_via_closed_forms(
    metric: &MetricModel,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> TangentVector {
    let alg = metric.algebra();
    let (xk, xp) = alg.split(x);
    let (yk, yp) = alg.split(y);
    let (zk, zp) = alg.split(z);
    let pick = |k: &TangentVector, p: &TangentVector, part| if part == CartanPart::K { k.clone() } else { p.clone() };
    let mut out = DVector::zeros(metric.dim());
    for a in [CartanPart::K, CartanPart::P] {
        for b in [CartanPart::K, CartanPart::P] {
            for c in [CartanPart::K, CartanPart::P] {
                let (av, bv, cv) = (pick(&xk, &xp, a), pick(&yk, &yp, b), pick(&zk, &zp, c));
                if av.iter().all(|v| *v == 0.0) || bv.iter().all(|v| *v == 0.0) || cv.iter().all(|v| *v == 0.0) {
                    continue;
                }
                out += pure_case(metric, (a, b, c), &av, &bv, &cv);
            }
        }
    }
    out
}

fn pure_case(
    metric: &MetricModel,
    parts: (CartanPart, CartanPart, CartanPart),
    a: &TangentVector,
    b: &TangentVector,
    c: &TangentVector,
) -> TangentVector {
    use CartanPart::{K, P};
    let alg = metric.algebra();
    let br = |u: &TangentVector, v: &TangentVector| alg.bracket(u, v);
    match parts {
        (K, K, K) => br(&br(b, a), c) * 0.25,
        (P, P, P) => br(&br(a, b), c) * -1.75,
        (P, K, P) => (br(a, &br(b, c)) + br(b, &br(a, c))) * 0.25,
        (K, P, P) => -pure_case(metric, (P, K, P), b, a, c),
        (P, P, K) => br(c, &br(a, b)) * 0.75,
        // R(X,V)W has no k-component; its p-components come from pair symmetry.
        (P, K, K) => p_components(metric, |e| {
            -metric.dot(&((br(e, &br(c, a)) + br(c, &br(e, a))) * 0.25), b)
        }),
        (K, P, K) => -pure_case(metric, (P, K, K), b, a, c),
        (K, K, P) => p_components(metric, |e| metric.dot(&(br(a, &br(c, e)) * 0.75), b)),
    }
}

/// Vector in p with `⟨v, e_d⟩ = f(e_d)` for every p basis element.
fn p_components(metric: &MetricModel, f: impl Fn(&TangentVector) -> f64) -> TangentVector {
    let alg = metric.algebra();
    let w = metric.weight();
    let mut v = DVector::zeros(metric.dim());
    for d in alg.indices_of(CartanPart::P) {
        v[d] = f(&alg.unit(d)) / w;
    }
    v
}

/// `R(x₁,x₂,x₃,x₄) = ⟨R(x₁,x₂)x₃, x₄⟩`.
pub fn curvature_form(
    metric: &MetricModel,
    x1: &TangentVector,
    x2: &TangentVector,
    x3: &TangentVector,
    x4: &TangentVector,
) -> f64 {
    metric.dot(&curvature_via_definition(metric, x1, x2, x3), x4)
}

/// `K(v1, v2) = ⟨R(v1,v2)v2, v1⟩ / (|v1|²|v2|² − ⟨v1,v2⟩²)`.
pub fn sectional_curvature(metric: &MetricModel, v1: &TangentVector, v2: &TangentVector) -> Result<f64> {
    if v1.len() != metric.dim() || v2.len() != metric.dim() {
        return Err(Error::Dimension { expected: metric.dim(), got: v1.len().min(v2.len()) });
    }
    let g11 = metric.dot(v1, v1);
    let g22 = metric.dot(v2, v2);
    let g12 = metric.dot(v1, v2);
    let gram = g11 * g22 - g12 * g12;
    if gram <= DEGENERATE_GRAM * g11 * g22 || gram <= 0.0 {
        return Err(Error::DegeneratePlane(gram));
    }
    Ok(curvature_form(metric, v1, v2, v2, v1) / gram)
}

/// Largest `|R_def − R_closed|∞ / (1 + |R_def|∞)` over `trials` seeded Gaussian triples.
pub fn dual_path_defect(metric: &MetricModel, trials: usize, seed: u64) -> f64 {
    let dim = metric.dim();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::stream(seed, t as u64);
            let x = rng::gaussian_vector(&mut r, dim);
            let y = rng::gaussian_vector(&mut r, dim);
            let z = rng::gaussian_vector(&mut r, dim);
            let a = curvature_via_definition(metric, &x, &y, &z);
            let b = curvature_via_closed_forms(metric, &x, &y, &z);
            (&a - &b).amax() / (1.0 + a.amax())
        })
        .reduce(|| 0.0, f64::max)
}
