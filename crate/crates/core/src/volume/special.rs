use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs a positive argument, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `ln k!`, exact up to rounding of the logarithm for `k ≤ 20`.
pub fn ln_factorial(k: u64) -> f64 {
    if k <= 20 {
        return ((1..=k).product::<u64>() as f64).ln();
    }
    statrs::function::gamma::ln_gamma(k as f64 + 1.0)
}

/// `ln ∫₀^π sin^m ρ dρ = ln(√π Γ((m+1)/2) / Γ(m/2 + 1))`.
fn ln_full_wallis(m: u64) -> f64 {
    let m = m as f64;
    0.5 * PI.ln() + statrs::function::gamma::ln_gamma((m + 1.0) / 2.0) - statrs::function::gamma::ln_gamma(m / 2.0 + 1.0)
}

/// Downward-recurrence start offset is capped at this many steps; beyond it the
/// forward recurrence is used (only when `sin x` is within ~1e-4 of 1).
const MAX_DOWNWARD_STEPS: f64 = 200_000.0;

/// `ln T_m` where `∫₀^x sin^m = sin^{m+1}(x) · T_m`, for `0 < x ≤ π/2`.
fn ln_scaled_integral(m: u64, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    if m == 0 {
        return (x / s).ln();
    }
    let s2 = s * s;
    let steps = if s < 1.0 { (1e-20f64.ln() / (2.0 * s.ln())).ceil() } else { f64::INFINITY };
    if steps <= MAX_DOWNWARD_STEPS {
        // T_{j−2} = (j s² T_j + c)/(j − 1), started at T_M = 0.
        let top = m + 2 * steps as u64;
        let mut t = 0.0;
        let mut j = top;
        while j > m {
            t = (j as f64 * s2 * t + c) / (j as f64 - 1.0);
            j -= 2;
        }
        t.ln()
    } else {
        // T_j = ((j−1) T_{j−2} − c)/(j s²) from T_0 or T_1.
        let (mut t, mut j) = if m % 2 == 0 { (x / s, 0u64) } else { ((1.0 - c) / s2, 1u64) };
        while j < m {
            j += 2;
            t = ((j as f64 - 1.0) * t - c) / (j as f64 * s2);
        }
        t.ln()
    }
}

/// `ln ∫₀^x sin^m ρ dρ` for `x ∈ [0, π]`; `−∞` at `x = 0`.
pub fn ln_sin_power_integral(m: u64, x: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&x) {
        return Err(Error::Domain(format!("integration limit {x} outside [0, π]")));
    }
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x <= FRAC_PI_2 {
        return Ok((m as f64 + 1.0) * x.sin().ln() + ln_scaled_integral(m, x));
    }
    let full = ln_full_wallis(m);
    let rest = PI - x;
    if rest <= 0.0 {
        return Ok(full);
    }
    let tail = (m as f64 + 1.0) * rest.sin().ln() + ln_scaled_integral(m, rest);
    Ok(full + (-(tail - full).exp()).ln_1p())
}

/// `∫₀^x sin^m ρ dρ` for `x ∈ [0, π]`.
pub fn sin_power_integral(m: u64, x: f64) -> Result<f64> {
    Ok(ln_sin_power_integral(m, x)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Romberg quadrature, used only as an oracle.
    fn romberg(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let mut prev = vec![0.5 * (b - a) * (f(a) + f(b))];
        for level in 1..=18 {
            let panels = 1u64 << level;
            let h = (b - a) / panels as f64;
            let mid: f64 = (0..panels / 2).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
            let mut row = vec![0.5 * prev[0] + h * mid];
            for j in 1..=level {
                let p = 4f64.powi(j as i32);
                row.push((p * row[j - 1] - prev[j - 1]) / (p - 1.0));
            }
            let done = (row[level] - prev[level - 1]).abs() <= 1e-15 * row[level].abs();
            prev = row;
            if done && level > 4 {
                break;
            }
        }
        *prev.last().unwrap()
    }

    #[test]
    fn gamma_values() {
        assert!((log_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn trivial_integrals() {
        assert!((sin_power_integral(0, 1.3).unwrap() - 1.3).abs() < 1e-15);
        assert!((sin_power_integral(1, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-14);
        assert!((sin_power_integral(2, PI).unwrap() - FRAC_PI_2).abs() < 1e-14);
        assert_eq!(sin_power_integral(4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn ninth_power_at_small_limit() {
        let v = sin_power_integral(9, 0.2372).unwrap();
        assert!((5.0e-8..=5.6e-8).contains(&v), "{v}");
        let q = romberg(&|r: f64| r.sin().powi(9), 0.0, 0.2372);
        assert!(((v - q) / q).abs() < 1e-11, "{v} {q}");
    }

    #[test]
    fn agrees_with_quadrature_across_regimes() {
        for &m in &[0u64, 1, 2, 3, 7, 20, 55, 120] {
            for &x in &[0.05, 0.2372, 0.9, 1.5, FRAC_PI_2 - 1e-5, FRAC_PI_2, 2.0, 3.0, PI] {
                let v = sin_power_integral(m, x).unwrap();
                let q = romberg(&|r: f64| r.sin().powi(m as i32), 0.0, x);
                assert!(((v - q) / q).abs() < 1e-11, "m={m} x={x} {v} {q}");
            }
        }
    }

    #[test]
    fn large_exponent_stays_in_log_domain() {
        let (m, x) = (8514.0, 0.2372f64);
        let l = ln_sin_power_integral(8514, x).unwrap();
        let hi = (m + 1.0) * x.ln() - (m + 1.0).ln();
        let lo = hi + m * (x.sin() / x).ln();
        assert!(l.is_finite() && lo <= l && l <= hi, "{lo} {l} {hi}");
    }

    proptest! {
        #[test]
        fn power_bounds(m in 0u64..200, x in 0.01f64..1.5) {
            let mf = m as f64;
            let l = ln_sin_power_integral(m, x).unwrap();
            let upper = (mf + 1.0) * x.ln() - (mf + 1.0).ln();
            let lower = upper + mf * (x.sin() / x).ln();
            prop_assert!(l <= upper + 1e-12);
            prop_assert!(l >= lower - 1e-12);
        }
    }
}
