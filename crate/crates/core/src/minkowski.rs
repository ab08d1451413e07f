//! Lorentzian 3-vectors with signature `(-, +, +)`, their dual extension, and
//! the E. Study map between oriented lines and unit dual vectors.
//!
//! Index 0 carries the negative metric sign. The cross product is
//!
//! ```text
//! a ∧ b = (a₃b₂ − a₂b₃, a₃b₁ − a₁b₃, a₁b₂ − a₂b₁)
//! ```
//!
//! which is Lorentz-orthogonal to both factors and satisfies
//! `a ∧ (b ∧ c) = ⟨a,b⟩c − ⟨a,c⟩b`. For a frame built as `U₃ = U₁ ∧ U₂`
//! with `U₁` timelike this gives `U₂ ∧ U₃ = −U₁` and `U₃ ∧ U₁ = U₂`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualnum::DualScalar;

/// `|⟨a,a⟩|` at or below this is classified as null.
pub const NULL_TOLERANCE: f64 = 1e-10;

/// Tolerance on the unit and line (`⟨a, a*⟩ = 0`) conditions of dual vectors.
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeomError {
    #[error("direction is null (⟨a,a⟩ = {0:e})")]
    NullDirection(f64),
    #[error("direction is not unit (|⟨a,a⟩| = {0})")]
    NotUnit(f64),
    #[error("dual vector is not a line: ⟨a, a*⟩ = {0:e}")]
    NotALine(f64),
}

/// A real vector of Lorentzian 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RealVec3(pub [f64; 3]);

impl RealVec3 {
    pub const ZERO: RealVec3 = RealVec3([0.0; 3]);
    pub const E1: RealVec3 = RealVec3([1.0, 0.0, 0.0]);
    pub const E2: RealVec3 = RealVec3([0.0, 1.0, 0.0]);
    pub const E3: RealVec3 = RealVec3([0.0, 0.0, 1.0]);

    #[inline]
    pub const fn new(c0: f64, c1: f64, c2: f64) -> Self {
        RealVec3([c0, c1, c2])
    }

    /// Lorentzian inner product `−a₁b₁ + a₂b₂ + a₃b₃`.
    #[inline]
    pub fn dot(self, b: RealVec3) -> f64 {
        let a = self.0;
        let b = b.0;
        -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Lorentzian cross product.
    #[inline]
    pub fn cross(self, b: RealVec3) -> RealVec3 {
        let a = self.0;
        let b = b.0;
        RealVec3([
            a[2] * b[1] - a[1] * b[2],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// `⟨a, a⟩`.
    #[inline]
    pub fn square(self) -> f64 {
        self.dot(self)
    }

    /// Euclidean norm of the coordinates; used only for residual sizes.
    pub fn euclid_norm(self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn causal(self) -> CausalClass {
        CausalClass::of(self.square())
    }
}

impl Add for RealVec3 {
    type Output = RealVec3;
    #[inline]
    fn add(self, b: RealVec3) -> RealVec3 {
        RealVec3([self.0[0] + b.0[0], self.0[1] + b.0[1], self.0[2] + b.0[2]])
    }
}

impl AddAssign for RealVec3 {
    #[inline]
    fn add_assign(&mut self, b: RealVec3) {
        *self = *self + b;
    }
}

impl Sub for RealVec3 {
    type Output = RealVec3;
    #[inline]
    fn sub(self, b: RealVec3) -> RealVec3 {
        RealVec3([self.0[0] - b.0[0], self.0[1] - b.0[1], self.0[2] - b.0[2]])
    }
}

impl Neg for RealVec3 {
    type Output = RealVec3;
    #[inline]
    fn neg(self) -> RealVec3 {
        RealVec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for RealVec3 {
    type Output = RealVec3;
    #[inline]
    fn mul(self, s: f64) -> RealVec3 {
        RealVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<RealVec3> for f64 {
    type Output = RealVec3;
    #[inline]
    fn mul(self, v: RealVec3) -> RealVec3 {
        v * self
    }
}

impl fmt::Display for RealVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike,
    Spacelike,
    Null,
}

impl CausalClass {
    /// Classifies by the sign of `⟨a,a⟩` with a `NULL_TOLERANCE` dead band.
    pub fn of(square: f64) -> CausalClass {
        if square < -NULL_TOLERANCE {
            CausalClass::Timelike
        } else if square > NULL_TOLERANCE {
            CausalClass::Spacelike
        } else {
            CausalClass::Null
        }
    }
}

/// A dual vector `a + εa*` of dual Lorentzian space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualVec3 {
    pub real: RealVec3,
    pub dual: RealVec3,
}

impl DualVec3 {
    pub const ZERO: DualVec3 = DualVec3 {
        real: RealVec3::ZERO,
        dual: RealVec3::ZERO,
    };

    #[inline]
    pub const fn new(real: RealVec3, dual: RealVec3) -> Self {
        DualVec3 { real, dual }
    }

    #[inline]
    pub const fn from_real(real: RealVec3) -> Self {
        DualVec3 {
            real,
            dual: RealVec3::ZERO,
        }
    }

    /// `⟨A,B⟩ = ⟨a,b⟩ + ε(⟨a,b*⟩ + ⟨a*,b⟩)`.
    #[inline]
    pub fn dot(self, b: DualVec3) -> DualScalar {
        DualScalar::new(
            self.real.dot(b.real),
            self.real.dot(b.dual) + self.dual.dot(b.real),
        )
    }

    /// `A ∧ B = a∧b + ε(a∧b* + a*∧b)`.
    #[inline]
    pub fn cross(self, b: DualVec3) -> DualVec3 {
        DualVec3::new(
            self.real.cross(b.real),
            self.real.cross(b.dual) + self.dual.cross(b.real),
        )
    }

    /// Multiplication by a dual scalar: `λa + ε(λa* + λ*a)`.
    #[inline]
    pub fn scale(self, s: DualScalar) -> DualVec3 {
        DualVec3::new(self.real * s.real, self.dual * s.real + self.real * s.dual)
    }

    /// Dual norm `∥a∥ + ε·σ⟨a,a*⟩/∥a∥` with `σ = +1` for spacelike and `−1`
    /// for timelike `a`, so that `∥A∥² = |⟨A,A⟩|` as dual numbers.
    pub fn norm(self) -> Result<DualScalar, GeomError> {
        let sq = self.real.square();
        let sign = match CausalClass::of(sq) {
            CausalClass::Null => return Err(GeomError::NullDirection(sq)),
            CausalClass::Spacelike => 1.0,
            CausalClass::Timelike => -1.0,
        };
        let n = sq.abs().sqrt();
        Ok(DualScalar::new(n, sign * self.real.dot(self.dual) / n))
    }

    /// Classification by the real part of `⟨A,A⟩`.
    pub fn causal(self) -> CausalClass {
        self.real.causal()
    }

    /// Largest absolute coordinate over both parts.
    pub fn max_abs(self) -> f64 {
        self.real.max_abs().max(self.dual.max_abs())
    }

    pub fn is_finite(self) -> bool {
        self.real.is_finite() && self.dual.is_finite()
    }

    /// Checks the unit-line conditions `|⟨a,a⟩| = 1` and `⟨a,a*⟩ = 0`.
    pub fn check_unit_line(self) -> Result<(), GeomError> {
        let sq = self.real.square();
        if sq.abs() <= NULL_TOLERANCE {
            return Err(GeomError::NullDirection(sq));
        }
        if (sq.abs() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(GeomError::NotUnit(sq.abs()));
        }
        let m = self.real.dot(self.dual);
        if m.abs() > UNIT_TOLERANCE {
            return Err(GeomError::NotALine(m));
        }
        Ok(())
    }

    /// The point on the represented line that is Lorentz-orthogonal to its
    /// direction: `−(a ∧ a*) / ⟨a,a⟩`.
    pub fn foot_point(self) -> Result<RealVec3, GeomError> {
        self.check_unit_line()?;
        Ok(self.real.cross(self.dual) * (-1.0 / self.real.square()))
    }
}

impl Add for DualVec3 {
    type Output = DualVec3;
    #[inline]
    fn add(self, b: DualVec3) -> DualVec3 {
        DualVec3::new(self.real + b.real, self.dual + b.dual)
    }
}

impl AddAssign for DualVec3 {
    #[inline]
    fn add_assign(&mut self, b: DualVec3) {
        *self = *self + b;
    }
}

impl Sub for DualVec3 {
    type Output = DualVec3;
    #[inline]
    fn sub(self, b: DualVec3) -> DualVec3 {
        DualVec3::new(self.real - b.real, self.dual - b.dual)
    }
}

impl Neg for DualVec3 {
    type Output = DualVec3;
    #[inline]
    fn neg(self) -> DualVec3 {
        DualVec3::new(-self.real, -self.dual)
    }
}

impl Mul<f64> for DualVec3 {
    type Output = DualVec3;
    #[inline]
    fn mul(self, s: f64) -> DualVec3 {
        DualVec3::new(self.real * s, self.dual * s)
    }
}

impl Mul<DualScalar> for DualVec3 {
    type Output = DualVec3;
    #[inline]
    fn mul(self, s: DualScalar) -> DualVec3 {
        self.scale(s)
    }
}

impl Mul<DualVec3> for DualScalar {
    type Output = DualVec3;
    #[inline]
    fn mul(self, v: DualVec3) -> DualVec3 {
        v.scale(self)
    }
}

/// An oriented line given by a point and a unit non-null direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineRep {
    pub point: RealVec3,
    pub direction: RealVec3,
}

impl LineRep {
    pub fn new(point: RealVec3, direction: RealVec3) -> Result<Self, GeomError> {
        check_unit_direction(direction)?;
        Ok(LineRep { point, direction })
    }

    pub fn to_dual(self) -> DualVec3 {
        DualVec3::new(self.direction, self.point.cross(self.direction))
    }

    /// Inverse Study map; the point is the foot point of the line.
    pub fn from_dual(u: DualVec3) -> Result<Self, GeomError> {
        Ok(LineRep {
            point: u.foot_point()?,
            direction: u.real,
        })
    }
}

fn check_unit_direction(e: RealVec3) -> Result<(), GeomError> {
    let sq = e.square();
    if sq.abs() <= NULL_TOLERANCE {
        return Err(GeomError::NullDirection(sq));
    }
    if (sq.abs() - 1.0).abs() > UNIT_TOLERANCE {
        return Err(GeomError::NotUnit(sq.abs()));
    }
    Ok(())
}

/// E. Study map: the line through `p` with unit direction `e` becomes
/// `e + ε(p ∧ e)`.
pub fn line_to_dual(p: RealVec3, e: RealVec3) -> Result<DualVec3, GeomError> {
    check_unit_direction(e)?;
    Ok(DualVec3::new(e, p.cross(e)))
}
