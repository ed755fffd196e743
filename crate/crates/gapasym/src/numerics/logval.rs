//! Signed log-magnitude arithmetic.
//!
//! Determinants and factorial products in this crate routinely leave the
//! representable range of `f64` (the full-weight Hankel determinant
//! underflows already near order 10), so they are carried as a sign plus
//! the natural log of the absolute value.

use std::ops::{Mul, MulAssign};

/// A real number stored as `sign * exp(log_abs)`.
///
/// `log_abs` is ignored (and canonicalised to zero) when `sign == 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    sign: i8,
    log_abs: f64,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue { sign: 0, log_abs: 0.0 }
    }

    pub fn one() -> Self {
        LogValue { sign: 1, log_abs: 0.0 }
    }

    /// Build from a sign and the natural log of the magnitude.
    pub fn from_ln(sign: i8, log_abs: f64) -> Self {
        assert!(sign == -1 || sign == 0 || sign == 1, "sign must be -1, 0 or +1");
        if sign == 0 {
            LogValue::zero()
        } else {
            LogValue { sign, log_abs }
        }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            LogValue::zero()
        } else if x > 0.0 {
            LogValue { sign: 1, log_abs: x.ln() }
        } else {
            LogValue { sign: -1, log_abs: (-x).ln() }
        }
    }

    /// Back to an ordinary real; overflows to +/-inf for large magnitudes.
    pub fn to_real(self) -> f64 {
        match self.sign {
            0 => 0.0,
            1 => self.log_abs.exp(),
            _ => -self.log_abs.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn ln_abs(self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            LogValue::zero()
        } else {
            LogValue {
                sign: self.sign * rhs.sign,
                log_abs: self.log_abs + rhs.log_abs,
            }
        }
    }
}

impl MulAssign for LogValue {
    fn mul_assign(&mut self, rhs: LogValue) {
        *self = *self * rhs;
    }
}
