//! Dual numbers `a + εa*` with `ε² = 0`.
//!
//! The dual unit here is the line-geometry one: the real part carries an
//! angle (or a dimensionless quantity) and the ε-part carries a length. It is
//! not a derivative-tracking infinitesimal, so smooth functions are lifted
//! through explicit `(f, f')` pairs instead of nested automatic
//! differentiation.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest admissible magnitude of a divisor's real part.
pub const DIVISOR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DualError {
    /// The divisor has (numerically) zero real part and no inverse.
    #[error("division by a pure dual number (real part {real:e})")]
    DivisionByPureDual { real: f64 },
    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },
}

/// A dual number `real + ε·dual`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualScalar {
    pub real: f64,
    pub dual: f64,
}

impl DualScalar {
    pub const ZERO: DualScalar = DualScalar { real: 0.0, dual: 0.0 };
    pub const ONE: DualScalar = DualScalar { real: 1.0, dual: 0.0 };
    /// The dual unit ε itself.
    pub const EPSILON: DualScalar = DualScalar { real: 0.0, dual: 1.0 };

    #[inline]
    pub const fn new(real: f64, dual: f64) -> Self {
        DualScalar { real, dual }
    }

    #[inline]
    pub const fn from_real(real: f64) -> Self {
        DualScalar { real, dual: 0.0 }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.real.is_finite() && self.dual.is_finite()
    }

    /// Largest absolute value of the two components.
    #[inline]
    pub fn max_abs(self) -> f64 {
        self.real.abs().max(self.dual.abs())
    }

    /// `self / rhs`. Fails when `|rhs.real| <= DIVISOR_TOLERANCE`.
    pub fn checked_div(self, rhs: DualScalar) -> Result<DualScalar, DualError> {
        if rhs.real.abs() <= DIVISOR_TOLERANCE {
            return Err(DualError::DivisionByPureDual { real: rhs.real });
        }
        Ok(DualScalar {
            real: self.real / rhs.real,
            dual: (self.dual * rhs.real - self.real * rhs.dual) / (rhs.real * rhs.real),
        })
    }

    pub fn recip(self) -> Result<DualScalar, DualError> {
        DualScalar::ONE.checked_div(self)
    }

    /// `f(a) + ε·a*·f'(a)` for a smooth `f` with derivative `df`.
    #[inline]
    pub fn lift(self, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> DualScalar {
        DualScalar {
            real: f(self.real),
            dual: self.dual * df(self.real),
        }
    }

    pub fn sinh(self) -> DualScalar {
        self.lift(f64::sinh, f64::cosh)
    }

    pub fn cosh(self) -> DualScalar {
        self.lift(f64::cosh, f64::sinh)
    }

    pub fn tanh(self) -> DualScalar {
        self.lift(f64::tanh, |x| {
            let c = x.cosh();
            1.0 / (c * c)
        })
    }

    /// Inverse hyperbolic tangent; requires `|real| < 1`.
    pub fn artanh(self) -> Result<DualScalar, DualError> {
        if self.real.is_nan() || self.real.abs() >= 1.0 {
            return Err(DualError::Domain {
                function: "artanh",
                value: self.real,
            });
        }
        Ok(self.lift(f64::atanh, |x| 1.0 / (1.0 - x * x)))
    }

    /// Square root; requires `real > 0`.
    pub fn sqrt(self) -> Result<DualScalar, DualError> {
        if self.real.is_nan() || self.real <= 0.0 {
            return Err(DualError::Domain {
                function: "sqrt",
                value: self.real,
            });
        }
        Ok(self.lift(f64::sqrt, |x| 0.5 / x.sqrt()))
    }

    /// Dual absolute value: `self` or `-self` by the sign of the real part.
    pub fn abs(self) -> DualScalar {
        if self.real < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Same value with any negative zeros replaced by positive ones.
    pub(crate) fn canonical_zero(self) -> DualScalar {
        DualScalar::new(self.real + 0.0, self.dual + 0.0)
    }
}

impl From<f64> for DualScalar {
    fn from(real: f64) -> Self {
        DualScalar::from_real(real)
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual.is_sign_negative() {
            write!(f, "{} - ε{}", self.real, -self.dual)
        } else {
            write!(f, "{} + ε{}", self.real, self.dual)
        }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    #[inline]
    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.real + rhs.real, self.dual + rhs.dual)
    }
}

impl AddAssign for DualScalar {
    #[inline]
    fn add_assign(&mut self, rhs: DualScalar) {
        *self = *self + rhs;
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    #[inline]
    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(self.real - rhs.real, self.dual - rhs.dual)
    }
}

impl SubAssign for DualScalar {
    #[inline]
    fn sub_assign(&mut self, rhs: DualScalar) {
        *self = *self - rhs;
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    #[inline]
    fn neg(self) -> DualScalar {
        DualScalar::new(-self.real, -self.dual)
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    #[inline]
    fn mul(self, rhs: DualScalar) -> DualScalar {
        DualScalar::new(
            self.real * rhs.real,
            self.real * rhs.dual + self.dual * rhs.real,
        )
    }
}

impl Mul<f64> for DualScalar {
    type Output = DualScalar;
    #[inline]
    fn mul(self, rhs: f64) -> DualScalar {
        DualScalar::new(self.real * rhs, self.dual * rhs)
    }
}

impl Mul<DualScalar> for f64 {
    type Output = DualScalar;
    #[inline]
    fn mul(self, rhs: DualScalar) -> DualScalar {
        rhs * self
    }
}

impl Sum for DualScalar {
    fn sum<I: Iterator<Item = DualScalar>>(iter: I) -> DualScalar {
        iter.fold(DualScalar::ZERO, Add::add)
    }
}
