use serde::Serialize;

use super::bounds::{bound_value, BoundMode, BoundReport, BoundSpec, BoundVariant};
use super::logvalue::LogValue;
use crate::error::Result;
use crate::quaternion::GroundField;

/// Relative tolerance for reproducing a published cell.
pub const TABLE_TOL: f64 = 1e-3;

/// Published values as printed: `(field, variant, n, literal)`.
pub const PRINTED_CELLS: [(GroundField, BoundVariant, usize, &str); 15] = [
    (GroundField::Real, BoundVariant::Original, 2, "0.00125"),
    (GroundField::Real, BoundVariant::Original, 3, "2.4583e-7"),
    (GroundField::Real, BoundVariant::Original, 4, "3.1469e-13"),
    (GroundField::Complex, BoundVariant::Original, 1, "0.00168"),
    (GroundField::Complex, BoundVariant::Original, 2, "2.9180e-9"),
    (GroundField::Complex, BoundVariant::Original, 3, "3.6324e-18"),
    (GroundField::Complex, BoundVariant::Original, 4, "2.2347e-30"),
    (GroundField::Real, BoundVariant::Improved, 3, "2.8073e-7"),
    (GroundField::Real, BoundVariant::Improved, 4, "4.0019e-13"),
    (GroundField::Complex, BoundVariant::Improved, 1, "0.00175"),
    (GroundField::Complex, BoundVariant::Improved, 2, "4.1822e-9"),
    (GroundField::Complex, BoundVariant::Improved, 3, "1.1556e-17"),
    (GroundField::Complex, BoundVariant::Improved, 4, "3.7865e-29"),
    (GroundField::Quaternion, BoundVariant::Original, 1, "3.6221e-11"),
    (GroundField::Quaternion, BoundVariant::Original, 2, "5.3637e-25"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCell {
    pub label: String,
    pub printed: f64,
    /// Computed value rounded to the printed number of significant digits equals the
    /// printed value.
    pub matches_printed_digits: bool,
    pub report: BoundReport,
    pub relative_deviation: f64,
    pub within_tolerance: bool,
}

pub fn cell_label(field: GroundField, variant: BoundVariant, n: usize) -> String {
    match (field, variant) {
        (GroundField::Quaternion, _) => format!("Q({n})"),
        (GroundField::Real, BoundVariant::Original) => format!("R_orig({n})"),
        (GroundField::Real, BoundVariant::Improved) => format!("R_impr({n})"),
        (GroundField::Complex, BoundVariant::Original) => format!("C_orig({n})"),
        (GroundField::Complex, BoundVariant::Improved) => format!("C_impr({n})"),
    }
}

/// Published value for a cell, if it appears in the table.
pub fn printed_cell(field: GroundField, variant: BoundVariant, n: usize) -> Option<f64> {
    let variant = if field == GroundField::Quaternion { BoundVariant::Original } else { variant };
    PRINTED_CELLS.iter().find(|c| c.0 == field && c.1 == variant && c.2 == n).map(|c| parse(c.3))
}

fn parse(literal: &str) -> f64 {
    literal.parse().expect("numeric literal")
}

/// Number of significant digits in a decimal literal such as `0.00125` or `2.9180e-9`.
fn significant_digits(literal: &str) -> usize {
    let mantissa = literal.split(['e', 'E']).next().unwrap_or(literal);
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len().max(1)
}

/// `value` rounded to `digits` significant digits, as `(mantissa digits, exponent)`.
fn rounded(value: LogValue, digits: usize) -> (i64, i32) {
    let (m, e) = value.mantissa_exp10();
    let scale = 10f64.powi(digits as i32 - 1);
    let r = (m * scale).round() as i64;
    if r >= 10 * scale as i64 {
        (r / 10, e + 1)
    } else {
        (r, e)
    }
}

/// Compare a computed bound against a printed literal.
pub fn compare_cell(report: BoundReport, literal: &str) -> TableCell {
    let printed = parse(literal);
    let computed = report.value;
    let relative_deviation = (computed / LogValue::from_f64(printed)).to_f64() - 1.0;
    let digits = significant_digits(literal);
    TableCell {
        label: cell_label(report.spec.field, report.spec.variant, report.spec.n),
        printed,
        matches_printed_digits: rounded(computed, digits) == rounded(LogValue::from_f64(printed), digits),
        report,
        relative_deviation,
        within_tolerance: relative_deviation.abs() <= TABLE_TOL,
    }
}

/// Every published cell, in publication order, evaluated in `mode`.
pub fn published_table(mode: BoundMode) -> Result<Vec<TableCell>> {
    PRINTED_CELLS
        .iter()
        .map(|&(field, variant, n, literal)| {
            let report = bound_value(&BoundSpec::new(field, variant, n, mode)?)?;
            Ok(compare_cell(report, literal))
        })
        .collect()
}
