use std::f64::consts::{LN_2, PI};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::logvalue::LogValue;
use super::special::{ln_factorial, ln_sin_power_integral, log_gamma};
use crate::error::{Error, Result};
use crate::quaternion::GroundField;

pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    Original,
    Improved,
}

/// Which integration limit a bound uses: the rounded constant of the closed formula, or
/// `min(r√k, π)` from the radius and curvature parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundMode {
    PrintedFormula,
    FirstPrinciples,
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.decimal().serialize(s)
    }
}

/// A labeled factor of a bound, kept in log form.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub label: String,
    pub value: LogValue,
}

impl Component {
    fn ln(label: impl Into<String>, ln_value: f64) -> Self {
        Self { label: label.into(), value: LogValue::from_ln(ln_value) }
    }
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Component", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("log10", &self.value.log10())?;
        st.end()
    }
}

/// Radius `r` and curvature parameter `k` behind each bound, with the integration limit
/// printed in the closed formula (`None` when the formula prints `min(r√k, π)` itself).
struct Constants {
    radius: f64,
    k: f64,
    printed_limit: Option<f64>,
}

fn constants(field: GroundField, variant: BoundVariant, n: usize) -> Constants {
    let nf = n as f64;
    let h = 3.0 + 4.0 * 2f64.sqrt();
    match (field, variant) {
        (GroundField::Quaternion, _) => Constants { radius: 0.114, k: h / 2.0, printed_limit: Some(0.2372) },
        (GroundField::Real, BoundVariant::Original) => Constants { radius: 0.0806, k: 2.0 + 9.0 * nf, printed_limit: None },
        (GroundField::Real, BoundVariant::Improved) => Constants { radius: 0.0806, k: h, printed_limit: Some(0.2372) },
        (GroundField::Complex, BoundVariant::Original) => {
            Constants { radius: 0.06925, k: 36.0 * nf + 21.0, printed_limit: None }
        }
        (GroundField::Complex, BoundVariant::Improved) => Constants { radius: 0.06925, k: 13.0, printed_limit: Some(0.2497) },
    }
}

/// Printed rounded limits against `r√k`: `(label, printed, r√k)`.
pub fn limit_consistency() -> Vec<(&'static str, f64, f64)> {
    [
        ("quaternionic", GroundField::Quaternion, BoundVariant::Original),
        ("real improved", GroundField::Real, BoundVariant::Improved),
        ("complex improved", GroundField::Complex, BoundVariant::Improved),
    ]
    .into_iter()
    .map(|(label, f, v)| {
        let c = constants(f, v, 1);
        (label, c.printed_limit.expect("rounded limit"), c.radius * c.k.sqrt())
    })
    .collect()
}

/// Fails if a printed limit differs from `r√k` by more than `1e-4`.
pub fn check_limit_consistency() -> Result<()> {
    for (label, printed, derived) in limit_consistency() {
        if (printed - derived).abs() > 1e-4 {
            return Err(Error::Domain(format!("{label}: printed limit {printed} vs r√k = {derived}")));
        }
    }
    Ok(())
}

/// Parameters of one volume lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSpec {
    pub field: GroundField,
    pub variant: BoundVariant,
    pub n: usize,
    /// Ball dimension, the dimension of the Lie algebra.
    pub d: usize,
    pub k: f64,
    pub radius: f64,
    pub integral_limit: f64,
    pub mode: BoundMode,
}

impl BoundSpec {
    /// The quaternionic bound has a single form; its variant is normalized to `Original`.
    pub fn new(field: GroundField, variant: BoundVariant, n: usize, mode: BoundMode) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&n) {
            return Err(Error::Domain(format!("rank n must lie in 1..={MAX_RANK}, got {n}")));
        }
        if field == GroundField::Real && n < 2 {
            return Err(Error::Domain("real bounds need n ≥ 2".into()));
        }
        let variant = if field == GroundField::Quaternion { BoundVariant::Original } else { variant };
        let c = constants(field, variant, n);
        let d = match field {
            GroundField::Quaternion => 2 * n * n + 5 * n + 3,
            GroundField::Complex => n * n + 2 * n,
            GroundField::Real => n * (n + 1) / 2,
        };
        let derived = (c.radius * c.k.sqrt()).min(PI);
        let integral_limit = match (mode, c.printed_limit) {
            (BoundMode::PrintedFormula, Some(l)) => l,
            _ => derived,
        };
        Ok(Self { field, variant, n, d, k: c.k, radius: c.radius, integral_limit, mode })
    }

    pub fn with_integral_limit(mut self, limit: f64) -> Result<Self> {
        if !(limit > 0.0 && limit <= PI) {
            return Err(Error::Domain(format!("integration limit {limit} outside (0, π]")));
        }
        self.integral_limit = limit;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub spec: BoundSpec,
    pub value: LogValue,
    pub components: Vec<Component>,
    pub mode: BoundMode,
}

impl BoundReport {
    fn from_components(spec: BoundSpec, components: Vec<Component>) -> Self {
        let value = components.iter().map(|c| c.value).product();
        let mode = spec.mode;
        Self { spec, value, components, mode }
    }

    /// `|ln value − Σ ln components|`.
    pub fn component_defect(&self) -> f64 {
        let sum: f64 = self.components.iter().map(|c| c.value.ln_magnitude()).sum();
        (self.value.ln_magnitude() - sum).abs()
    }
}

/// `ln[(2n+1)!(2n−1)!⋯3!1!]`.
fn ln_odd_factorials(n: usize) -> f64 {
    (0..=n).map(|i| ln_factorial(2 * i as u64 + 1)).sum()
}

/// `ln[(n−1)!(n−2)!⋯1!]`.
fn ln_superfactorial(m: usize) -> f64 {
    (1..=m).map(|k| ln_factorial(k as u64)).sum()
}

/// `ln[(n−2)!(n−4)!⋯]`, stopping at `1!` or `0!`.
fn ln_alternate_factorials(n: usize) -> f64 {
    (0..=n.saturating_sub(2)).rev().step_by(2).map(|k| ln_factorial(k as u64)).sum()
}

fn integral_component(spec: &BoundSpec) -> Result<Component> {
    Ok(Component::ln(
        format!("int_0^{} sin^{}", spec.integral_limit, spec.d - 1),
        ln_sin_power_integral(spec.d as u64 - 1, spec.integral_limit)?,
    ))
}

/// Evaluate the closed-form bound in log form.
pub fn bound_value(spec: &BoundSpec) -> Result<BoundReport> {
    let n = spec.n as f64;
    let d = spec.d as f64;
    let ln_pi = PI.ln();
    let mut c = Vec::new();
    match spec.field {
        GroundField::Quaternion => {
            c.push(Component::ln("pi^(3n/2)", 1.5 * n * ln_pi));
            c.push(Component::ln("(2n+1)!(2n-1)!...3!1!", ln_odd_factorials(spec.n)));
            c.push(Component::ln("2^-(n-1)", -(n - 1.0) * LN_2));
            c.push(Component::ln("1/Gamma(d/2)", -log_gamma(d / 2.0)?));
            c.push(Component::ln("1/Gamma((4n+1)/2)", -log_gamma((4.0 * n + 1.0) / 2.0)?));
            c.push(Component::ln("k^-(d/2)", -(d / 2.0) * spec.k.ln()));
        }
        GroundField::Real => {
            c.push(Component::ln("2^((6-n)/4)", (6.0 - n) / 4.0 * LN_2));
            c.push(Component::ln("pi^(n/4)", n / 4.0 * ln_pi));
            c.push(Component::ln("(n-2)!(n-4)!...", ln_alternate_factorials(spec.n)));
            c.push(Component::ln("k^-(d/2)", -(d / 2.0) * spec.k.ln()));
            c.push(Component::ln("1/Gamma(d/2)", -log_gamma(d / 2.0)?));
        }
        GroundField::Complex => {
            c.push(Component::ln("2^(n^2+n+1)", (n * n + n + 1.0) * LN_2));
            c.push(Component::ln("pi^(n/2)", n / 2.0 * ln_pi));
            c.push(Component::ln("(n-1)!(n-2)!...1!", ln_superfactorial(spec.n - 1)));
            c.push(Component::ln("k^-(d/2)", -(d / 2.0) * spec.k.ln()));
            c.push(Component::ln("1/Gamma(d/2)", -log_gamma(d / 2.0)?));
        }
    }
    c.push(integral_component(spec)?);
    Ok(BoundReport::from_components(spec.clone(), c))
}

fn ball_volume_components(d: usize, k: f64, limit: f64) -> Result<Vec<Component>> {
    let df = d as f64;
    Ok(vec![
        Component::ln("2", LN_2),
        Component::ln("(pi/k)^(d/2)", df / 2.0 * (PI / k).ln()),
        Component::ln("1/Gamma(d/2)", -log_gamma(df / 2.0)?),
        Component::ln(format!("int_0^{limit} sin^{}", d - 1), ln_sin_power_integral(d as u64 - 1, limit)?),
    ])
}

/// Volume `V(d, k, r) = 2(π/k)^{d/2}/Γ(d/2) ∫₀^{min(r√k, π)} sin^{d−1}` of a radius-`r` ball
/// in the `d`-dimensional space of constant curvature `k` (rescaled by `√k`).
pub fn ball_volume(d: usize, k: f64, r: f64) -> Result<LogValue> {
    if d == 0 || !(k > 0.0) || !(r > 0.0) {
        return Err(Error::Domain(format!("ball volume needs d, k, r > 0, got ({d}, {k}, {r})")));
    }
    Ok(ball_volume_components(d, k, (r * k.sqrt()).min(PI))?.iter().map(|c| c.value).product())
}

/// `Vol[Sp(n)×Sp(1)]` with the two quantities it is derived from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactVolume {
    pub n: usize,
    pub value: LogValue,
    pub vol_sp_n_plus_1: LogValue,
    pub quotient_sphere: LogValue,
    /// `|ln(Vol[Sp(n+1)] / sphere) − ln value|`.
    pub ratio_defect: f64,
}

/// `Vol[Sp(n)×Sp(1)] = 2ⁿ π^{n²+n+3/2} Γ((4n+1)/2) / ((2n+1)!(2n−1)!⋯1!)`, alongside
/// `Vol[Sp(n+1)] = 2^{n+1} π^{(n+1)(n+2)} / ((2n+1)!⋯1!)` and the quotient volume
/// `2π^{(4n+1)/2}/Γ((4n+1)/2)`.
pub fn vol_sp_n_times_sp1(n: usize) -> Result<CompactVolume> {
    if n < 1 {
        return Err(Error::Domain("rank n must be at least 1".into()));
    }
    let nf = n as f64;
    let ln_pi = PI.ln();
    let odd = ln_odd_factorials(n);
    let g = log_gamma((4.0 * nf + 1.0) / 2.0)?;
    let value = nf * LN_2 + (nf * nf + nf + 1.5) * ln_pi + g - odd;
    let big = (nf + 1.0) * LN_2 + (nf + 1.0) * (nf + 2.0) * ln_pi - odd;
    let sphere = LN_2 + (4.0 * nf + 1.0) / 2.0 * ln_pi - g;
    Ok(CompactVolume {
        n,
        value: LogValue::from_ln(value),
        vol_sp_n_plus_1: LogValue::from_ln(big),
        quotient_sphere: LogValue::from_ln(sphere),
        ratio_defect: ((big - sphere) - value).abs(),
    })
}

/// `V(d₀, k₀, r₀) / Vol[Sp(n)×Sp(1)]` with `d₀ = 2n²+5n+3`, `k₀ = (3+4√2)/2`, `r₀ = 0.114`.
pub fn q_bound_first_principles(n: usize) -> Result<BoundReport> {
    let spec = BoundSpec::new(GroundField::Quaternion, BoundVariant::Original, n, BoundMode::FirstPrinciples)?;
    q_bound_first_principles_with_limit(n, spec.integral_limit)
}

/// As [`q_bound_first_principles`] with the integration limit overridden.
pub fn q_bound_first_principles_with_limit(n: usize, limit: f64) -> Result<BoundReport> {
    let spec = BoundSpec::new(GroundField::Quaternion, BoundVariant::Original, n, BoundMode::FirstPrinciples)?
        .with_integral_limit(limit)?;
    let mut c = ball_volume_components(spec.d, spec.k, spec.integral_limit)?;
    c.push(Component { label: "1/Vol[Sp(n)xSp(1)]".into(), value: vol_sp_n_times_sp1(n)?.value.recip() });
    Ok(BoundReport::from_components(spec, c))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HurwitzBound {
    pub volume: f64,
    pub n: usize,
    pub q: LogValue,
    pub ratio: LogValue,
    /// `⌊Vol / Q(n)⌋` when it fits in 128 bits.
    pub floor: Option<u128>,
}

/// `|H| ≤ Vol(M) / Q(n)` for a finite isometry group `H` of a closed quaternionic
/// hyperbolic manifold `M`. The floor absorbs relative rounding below `1e-12`.
pub fn hurwitz_order_bound(volume: f64, n: usize) -> Result<HurwitzBound> {
    if !(volume > 0.0) || !volume.is_finite() {
        return Err(Error::Domain(format!("volume must be positive, got {volume}")));
    }
    let spec = BoundSpec::new(GroundField::Quaternion, BoundVariant::Original, n, BoundMode::PrintedFormula)?;
    let q = bound_value(&spec)?.value;
    let ratio = LogValue::from_f64(volume) / q;
    let r = ratio.to_f64();
    let floor = (r.is_finite() && r < 1.7e38).then(|| (r * (1.0 + 1e-12)).floor() as u128);
    Ok(HurwitzBound { volume, n, q, ratio, floor })
}
