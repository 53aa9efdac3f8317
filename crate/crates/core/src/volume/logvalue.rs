use std::fmt;
use std::ops::{Div, Mul};

use serde::Serialize;

/// Real number carried as sign and natural log of the magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    ln_magnitude: f64,
}

/// Decimal rendering of a [`LogValue`]: 6 significant digits plus exact `log10`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decimal {
    pub value: String,
    pub mantissa: f64,
    pub exp10: i32,
    pub log10: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { sign: 0, ln_magnitude: f64::NEG_INFINITY };
    pub const ONE: LogValue = LogValue { sign: 1, ln_magnitude: 0.0 };

    /// Positive value with the given natural log.
    pub fn from_ln(ln_magnitude: f64) -> Self {
        if ln_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { sign: 1, ln_magnitude }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self { sign: if x > 0.0 { 1 } else { -1 }, ln_magnitude: x.abs().ln() }
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn ln_magnitude(self) -> f64 {
        self.ln_magnitude
    }

    pub fn log10(self) -> f64 {
        self.ln_magnitude / std::f64::consts::LN_10
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.ln_magnitude.exp()
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        Self { sign: self.sign, ln_magnitude: -self.ln_magnitude }
    }

    /// `|x|^p` with the sign of `x` (only meaningful for positive `x` or integer `p`).
    pub fn powf(self, p: f64) -> Self {
        if self.sign == 0 {
            return Self::ZERO;
        }
        Self { sign: self.sign, ln_magnitude: self.ln_magnitude * p }
    }

    /// Sum via log-sum-exp; opposite signs subtract.
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_magnitude >= other.ln_magnitude { (self, other) } else { (other, self) };
        let r = (small.ln_magnitude - big.ln_magnitude).exp();
        if big.sign == small.sign {
            Self { sign: big.sign, ln_magnitude: big.ln_magnitude + r.ln_1p() }
        } else if r == 1.0 {
            Self::ZERO
        } else {
            Self { sign: big.sign, ln_magnitude: big.ln_magnitude + (-r).ln_1p() }
        }
    }

    /// `(mantissa, exponent)` with `1 ≤ |mantissa| < 10`.
    pub fn mantissa_exp10(self) -> (f64, i32) {
        if self.sign == 0 {
            return (0.0, 0);
        }
        let l = self.log10();
        let mut e = l.floor();
        let mut m = 10f64.powf(l - e);
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        (f64::from(self.sign) * m, e as i32)
    }

    pub fn decimal(self) -> Decimal {
        let (mantissa, exp10) = self.mantissa_exp10();
        Decimal { value: self.to_string(), mantissa, exp10, log10: self.log10() }
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue { sign: self.sign * rhs.sign, ln_magnitude: self.ln_magnitude + rhs.ln_magnitude }
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: LogValue) -> LogValue {
        self * rhs.recip()
    }
}

impl std::iter::Product for LogValue {
    fn product<I: Iterator<Item = LogValue>>(iter: I) -> LogValue {
        iter.fold(LogValue::ONE, |a, b| a * b)
    }
}

/// Six significant digits in scientific notation, e.g. `3.62212e-11`.
impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0.00000e0");
        }
        let (m, e) = self.mantissa_exp10();
        let rounded = (m * 1e5).round() / 1e5;
        if rounded.abs() >= 10.0 {
            write!(f, "{:.5}e{}", rounded / 10.0, e + 1)
        } else {
            write!(f, "{rounded:.5}e{e}")
        }
    }
}
