use serde::Serialize;

use crate::error::{Error, Result};

/// Constant reported in the literature for the root with `(C₁, C₂) = (1, √2)`.
pub const PUBLISHED_ROOT: f64 = 0.228;
/// Agreement threshold for the comparison flag.
pub const ROOT_AGREEMENT_TOL: f64 = 1e-3;

const SCAN_START: f64 = 1e-6;
const SCAN_STEP: f64 = 1e-4;

/// `F(t) = e^{C₁t} − 2 sin(C₂t) − C₁t / (e^{C₁t} − 1)`, extended by `F(0) = 0`.
pub fn wang_f(t: f64, c1: f64, c2: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let u = c1 * t;
    let ratio = if u == 0.0 { 1.0 } else { u / u.exp_m1() };
    u.exp() - 2.0 * (c2 * t).sin() - ratio
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WangRoot {
    pub c1: f64,
    pub c2: f64,
    pub root: f64,
    pub residual: f64,
    #[serde(rename = "paper_claim")]
    pub published_root: f64,
    /// `F` evaluated at the claimed constant.
    pub f_at_published: f64,
    pub agrees: bool,
}

/// Least zero of `F` in `(ε, t_max]`: a sign-change scan with step `1e-4` from `ε = 1e-6`,
/// then bisection to an interval of `1e-12`.
pub fn wang_root(c1: f64, c2: f64, t_max: f64) -> Result<WangRoot> {
    if !(c1 > 0.0) || c2 < 0.0 || !c2.is_finite() {
        return Err(Error::Domain(format!("need c1 > 0 and c2 ≥ 0, got ({c1}, {c2})")));
    }
    if !(t_max > SCAN_START) {
        return Err(Error::Domain(format!("t_max must exceed {SCAN_START}")));
    }
    let f = |t| wang_f(t, c1, c2);
    let mut a = SCAN_START;
    let mut fa = f(a);
    let mut bracket = None;
    let mut i = 1u64;
    while a < t_max {
        let b = (SCAN_START + i as f64 * SCAN_STEP).min(t_max);
        let fb = f(b);
        if fa == 0.0 {
            bracket = Some((a, a));
            break;
        }
        if fa.signum() != fb.signum() {
            bracket = Some((a, b));
            break;
        }
        a = b;
        fa = fb;
        i += 1;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::RootNotFound { t_max })?;
    let slo = f(lo).signum();
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok(WangRoot {
        c1,
        c2,
        root,
        residual: f(root),
        published_root: PUBLISHED_ROOT,
        f_at_published: f(PUBLISHED_ROOT),
        agrees: (root - PUBLISHED_ROOT).abs() <= ROOT_AGREEMENT_TOL,
    })
}
