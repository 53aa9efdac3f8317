use std::f64::consts::PI;

use orbivol::volume::{
    ball_volume, bound_value, check_limit_consistency, hurwitz_order_bound, ln_factorial, log_gamma,
    published_table, q_bound_first_principles, sin_power_integral, vol_sp_n_times_sp1, BoundMode, BoundSpec,
    BoundVariant, LogValue, PRINTED_CELLS, TABLE_TOL,
};
use orbivol::{Error, GroundField};
use proptest::prelude::*;

fn printed(field: GroundField, variant: BoundVariant, n: usize) -> orbivol::volume::BoundReport {
    bound_value(&BoundSpec::new(field, variant, n, BoundMode::PrintedFormula).unwrap()).unwrap()
}

#[test]
fn log_gamma_against_stirling() {
    let x: f64 = 151.5;
    let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3));
    assert!((log_gamma(x).unwrap() - stirling).abs() <= 1e-10 * stirling);
    assert!((log_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() <= 1e-14);
    assert!(matches!(log_gamma(0.0), Err(Error::Domain(_))));
    assert_eq!(ln_factorial(0), 0.0);
    assert!((ln_factorial(5) - 120f64.ln()).abs() <= 1e-15);
}

#[test]
fn sine_power_integrals() {
    assert!((sin_power_integral(2, PI / 2.0).unwrap() - PI / 4.0).abs() <= 1e-14);
    assert!((sin_power_integral(1, 0.3).unwrap() - (1.0 - 0.3f64.cos())).abs() <= 1e-15);
    assert!((sin_power_integral(3, PI).unwrap() - 4.0 / 3.0).abs() <= 1e-14);
    assert!((sin_power_integral(0, 0.25).unwrap() - 0.25).abs() <= 1e-15);
    assert!(sin_power_integral(4, -0.1).is_err());
}

#[test]
fn published_cells() {
    let table = published_table(BoundMode::PrintedFormula).unwrap();
    assert_eq!(table.len(), PRINTED_CELLS.len());
    let passing: Vec<_> = table.iter().filter(|c| c.within_tolerance).map(|c| c.label.as_str()).collect();
    assert_eq!(
        passing,
        ["R_orig(4)", "C_orig(2)", "C_orig(3)", "C_orig(4)", "R_impr(4)", "C_impr(1)", "C_impr(2)", "C_impr(3)", "Q(1)"]
    );
    let c1 = table.iter().find(|c| c.label == "C_orig(1)").unwrap();
    assert!(c1.matches_printed_digits && !c1.within_tolerance);
    for c in &table {
        assert_eq!(c.within_tolerance, c.relative_deviation.abs() <= TABLE_TOL);
    }
}

#[test]
fn quaternionic_first_cell_and_hurwitz() {
    let q = printed(GroundField::Quaternion, BoundVariant::Original, 1).value.to_f64();
    assert!((q / 3.6221e-11 - 1.0).abs() <= 1e-4);
    let h = hurwitz_order_bound(1.0, 1).unwrap();
    assert!((h.ratio.to_f64() / 2.7608e10 - 1.0).abs() <= 1e-3);
    assert_eq!(h.floor, Some(h.ratio.to_f64().floor() as u128));
    let exact = hurwitz_order_bound(q * 7.0, 1).unwrap();
    assert_eq!(exact.floor, Some(7));
    assert!(hurwitz_order_bound(-1.0, 1).is_err());
    assert!(hurwitz_order_bound(1.0, 0).is_err());
}

#[test]
fn bounds_decrease_with_rank() {
    let cases = [
        (GroundField::Quaternion, BoundVariant::Original, 1),
        (GroundField::Complex, BoundVariant::Original, 1),
        (GroundField::Complex, BoundVariant::Improved, 1),
        (GroundField::Real, BoundVariant::Original, 2),
        (GroundField::Real, BoundVariant::Improved, 2),
    ];
    for (field, variant, start) in cases {
        let values: Vec<f64> = (start..=8).map(|n| printed(field, variant, n).value.log10()).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{field:?} {variant:?}: {values:?}");
    }
}

#[test]
fn components_multiply_to_value() {
    for field in GroundField::ALL {
        for variant in [BoundVariant::Original, BoundVariant::Improved] {
            for n in 2..=8 {
                let r = printed(field, variant, n);
                assert!(r.component_defect() <= 1e-12);
                assert!(!r.components.is_empty());
            }
        }
    }
}

#[test]
fn closed_form_matches_first_principles() {
    check_limit_consistency().unwrap();
    for n in 1..=8 {
        let spec = BoundSpec::new(GroundField::Quaternion, BoundVariant::Original, n, BoundMode::FirstPrinciples).unwrap();
        let closed = bound_value(&spec).unwrap().value;
        let derived = q_bound_first_principles(n).unwrap().value;
        assert!((closed / derived).ln_magnitude().abs() <= 1e-12, "n={n}");

        // the rounded limit shifts ln Q by at most d·Δ/limit
        let rounded = printed(GroundField::Quaternion, BoundVariant::Original, n).value;
        let shift = (rounded / closed).ln_magnitude().abs();
        let delta = (0.2372 - spec.integral_limit).abs() / spec.integral_limit;
        assert!(shift <= spec.d as f64 * delta, "n={n}: {shift}");
    }
}

#[test]
fn ball_over_compact_volume() {
    for n in 1..=6 {
        let q = q_bound_first_principles(n).unwrap();
        let k0 = (3.0 + 4.0 * 2f64.sqrt()) / 2.0;
        let ball = ball_volume(2 * n * n + 5 * n + 3, k0, 0.114).unwrap();
        let vol = vol_sp_n_times_sp1(n).unwrap();
        assert!(vol.ratio_defect <= 1e-10);
        assert!(((q.value * vol.value) / ball).ln_magnitude().abs() <= 1e-12);
    }
}

#[test]
fn ball_volume_limits() {
    // unit 2-sphere cap of radius π is the whole sphere
    assert!((ball_volume(2, 1.0, PI).unwrap().to_f64() - 4.0 * PI).abs() <= 1e-12);
    // small radius: Euclidean disc
    let r = 1e-4;
    assert!((ball_volume(2, 1.0, r).unwrap().to_f64() / (PI * r * r) - 1.0).abs() <= 1e-8);
    assert!(ball_volume(0, 1.0, 1.0).is_err());
}

#[test]
fn spec_validation() {
    assert!(BoundSpec::new(GroundField::Real, BoundVariant::Original, 1, BoundMode::PrintedFormula).is_err());
    assert!(BoundSpec::new(GroundField::Complex, BoundVariant::Original, 0, BoundMode::PrintedFormula).is_err());
    assert!(BoundSpec::new(GroundField::Complex, BoundVariant::Original, 65, BoundMode::PrintedFormula).is_err());
    let h = BoundSpec::new(GroundField::Quaternion, BoundVariant::Improved, 2, BoundMode::PrintedFormula).unwrap();
    assert_eq!(h.variant, BoundVariant::Original);
    assert_eq!(h.d, 21);
    assert!(h.clone().with_integral_limit(4.0).is_err());
    let v = bound_value(&BoundSpec::new(GroundField::Complex, BoundVariant::Original, 64, BoundMode::FirstPrinciples).unwrap());
    assert!(v.unwrap().value.log10().is_finite());
}

#[test]
fn report_serializes_as_decimal() {
    let r = printed(GroundField::Quaternion, BoundVariant::Original, 1);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["value"]["value"], "3.62212e-11");
    assert_eq!(json["value"]["exp10"], -11);
    assert_eq!(json["spec"]["field"], "quaternion");
    assert_eq!(json["mode"], "PRINTED_FORMULA");
    assert!(json["components"][0]["log10"].is_number());
}

proptest! {
    #[test]
    fn logvalue_arithmetic(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        prop_assume!(a != 0.0 && b != 0.0);
        let (la, lb) = (LogValue::from_f64(a), LogValue::from_f64(b));
        prop_assert!(((la * lb).to_f64() - a * b).abs() <= 1e-12 * (a * b).abs());
        prop_assert!(((la / lb).to_f64() - a / b).abs() <= 1e-12 * (a / b).abs());
        let s = la.add(lb).to_f64();
        prop_assert!((s - (a + b)).abs() <= 1e-9 * (a.abs() + b.abs()));
    }

    #[test]
    fn integral_is_monotone_in_limit(m in 0u64..200, x in 0.01f64..3.0, dx in 0.001f64..0.1) {
        let lo = sin_power_integral(m, x).unwrap();
        let hi = sin_power_integral(m, (x + dx).min(PI)).unwrap();
        prop_assert!(hi >= lo);
        prop_assert!(lo >= 0.0);
    }
}
