//! Integral invariants of closed ruled surfaces: pitch `L`, dual angle of
//! pitch `Λ = λ − εL`, and the pointwise drall (distribution parameter) `P`.
//!
//! The Steiner vector is kept as coefficients on the moving frame, and every
//! angle of pitch is the contraction `Λ_X = −⟨D, X⟩` with metric `(−,+,+)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualnum::DualScalar;
use crate::frenet::{FrameAxis, FrenetError, PfaffCase, PfaffData, SampledFrame};

/// Drall denominators at or below this are singular.
pub const DRALL_TOLERANCE: f64 = 1e-10;

/// Largest spread of `ω` (and of `ω*`) over the nodes for which the angle
/// still counts as constant.
pub const CONSTANT_ANGLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("frame vectors live on different frames ({left:?} vs {right:?})")]
    FrameMismatch { left: FrameTag, right: FrameTag },
    #[error("drall denominator {denominator} vanishes at node {node} (value {value:e})")]
    DrallSingularity {
        node: usize,
        denominator: &'static str,
        value: f64,
    },
    #[error("axis angle is not constant (spread {real_spread:e} + ε{dual_spread:e})")]
    VaryingAngle { real_spread: f64, dual_spread: f64 },
    #[error(transparent)]
    Frenet(#[from] FrenetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FrameTag {
    UFrame,
    VFrame,
}

/// Dual coefficients `c₁E₁ + c₂E₂ + c₃E₃` on a tagged moving frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameVector {
    pub tag: FrameTag,
    pub c: [DualScalar; 3],
}

impl FrameVector {
    pub fn new(tag: FrameTag, c: [DualScalar; 3]) -> Self {
        FrameVector { tag, c }
    }

    /// The frame's own unit vector `E_axis`.
    pub fn unit(tag: FrameTag, axis: FrameAxis) -> Self {
        let mut c = [DualScalar::ZERO; 3];
        c[axis_index(axis)] = DualScalar::ONE;
        FrameVector { tag, c }
    }

    pub fn component(&self, axis: FrameAxis) -> DualScalar {
        self.c[axis_index(axis)]
    }

    /// `−c₁x₁ + c₂x₂ + c₃x₃`.
    pub fn dot(&self, other: &FrameVector) -> Result<DualScalar, InvariantError> {
        if self.tag != other.tag {
            return Err(InvariantError::FrameMismatch {
                left: self.tag,
                right: other.tag,
            });
        }
        let [a1, a2, a3] = self.c;
        let [b1, b2, b3] = other.c;
        Ok(a2 * b2 + a3 * b3 - a1 * b1)
    }

    /// Re-expresses the vector on the other frame of the pair linked by
    /// `V₁ = coshΦU₁ + sinhΦU₃`, `V₂ = U₂`, `V₃ = −sinhΦU₁ − coshΦU₃`.
    ///
    /// The linking matrix is an involution, so the same coefficient map
    /// goes both ways.
    pub fn switch_frame(&self, phi: DualScalar) -> FrameVector {
        let (c, s) = (phi.cosh(), phi.sinh());
        let [a1, a2, a3] = self.c;
        let tag = match self.tag {
            FrameTag::UFrame => FrameTag::VFrame,
            FrameTag::VFrame => FrameTag::UFrame,
        };
        FrameVector {
            tag,
            c: [c * a1 - s * a3, a2, s * a1 - c * a3],
        }
    }
}

pub(crate) fn axis_index(axis: FrameAxis) -> usize {
    match axis {
        FrameAxis::First => 0,
        FrameAxis::Second => 1,
        FrameAxis::Third => 2,
    }
}

/// Composite trapezoid on a periodic uniform grid, i.e. `h·Σ values`.
pub fn closed_integral(values: &[DualScalar], period: f64) -> DualScalar {
    let h = period / values.len() as f64;
    values.iter().copied().sum::<DualScalar>() * h
}

/// Real-valued variant of [`closed_integral`].
pub fn closed_integral_real(values: &[f64], period: f64) -> f64 {
    period / values.len() as f64 * values.iter().sum::<f64>()
}

/// `D = U₁∮τ − U₃∮κ` in `U`-frame coefficients.
pub fn steiner(frame: &SampledFrame) -> FrameVector {
    let int_k = closed_integral(&frame.kappa, frame.period);
    let int_t = closed_integral(&frame.tau, frame.period);
    FrameVector::new(FrameTag::UFrame, [int_t, DualScalar::ZERO, -int_k])
}

/// `Λ_X = −⟨D, X⟩`.
pub fn angle_of_pitch(d: &FrameVector, axis: &FrameVector) -> Result<DualScalar, InvariantError> {
    Ok(-d.dot(axis)?)
}

/// Pointwise drall with summary statistics over the nodes where it is
/// defined. `None` marks a node with vanishing denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Drall {
    pub samples: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrallSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub defined: usize,
    pub singular: usize,
}

impl Drall {
    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().filter_map(|s| *s)
    }

    pub fn is_complete(&self) -> bool {
        self.samples.iter().all(Option::is_some)
    }

    /// `None` when no node carries a defined value.
    pub fn summary(&self) -> Option<DrallSummary> {
        let defined = self.defined().count();
        if defined == 0 {
            return None;
        }
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for v in self.defined() {
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        Some(DrallSummary {
            min,
            max,
            mean: sum / defined as f64,
            defined,
            singular: self.samples.len() - defined,
        })
    }
}

/// Pitch, angle of pitch and drall of one closed ruled surface.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantTriple {
    /// `Λ = λ − εL`
    pub angle: DualScalar,
    pub lambda: f64,
    /// `L = −Λ.dual`
    pub pitch: f64,
    /// `L` from its closed-form integral
    pub pitch_closed: f64,
    pub drall: Drall,
}

impl InvariantTriple {
    pub fn new(angle: DualScalar, pitch_closed: f64, drall: Drall) -> Self {
        InvariantTriple {
            angle,
            lambda: angle.real,
            pitch: -angle.dual,
            pitch_closed,
            drall,
        }
    }
}

/// `num/den`, with `None` when `|den| ≤ DRALL_TOLERANCE`.
pub fn drall_ratio(num: f64, den: f64) -> Option<f64> {
    (den.abs() > DRALL_TOLERANCE).then(|| num / den)
}

/// Invariants of the frame surfaces for Frenet-type curvature pairs: the
/// `U`-frame with `(κ, τ)` or the `V`-frame with `(P, Q)`.
///
/// With `E₁′ = aE₂`, `E₂′ = aE₁ − bE₃`, `E₃′ = bE₂` and
/// `D = s·(∮b, 0, −∮a)` (`s = 1` on the `U`-frame, `−1` on the
/// left-handed `V`-frame), the closed forms are
///
/// | axis | `Λ`    | `L`       | `P`                     |
/// |------|--------|-----------|-------------------------|
/// | `E₁` | `s∮b`  | `−s∮b*`   | `a*/a`                  |
/// | `E₂` | `0`    | `0`       | `(bb* − aa*)/(b² − a²)` |
/// | `E₃` | `s∮a`  | `−s∮a*`   | `b*/b`                  |
pub(crate) struct FramePair<'a> {
    pub d: FrameVector,
    pub orientation: f64,
    pub a: &'a [DualScalar],
    pub b: &'a [DualScalar],
    pub period: f64,
    /// Names of the three drall denominators, for error messages.
    pub names: [&'static str; 3],
}

impl FramePair<'_> {
    fn drall_parts(&self, axis: FrameAxis) -> Vec<DrallParts> {
        self.a
            .iter()
            .zip(self.b)
            .map(|(a, b)| match axis {
                FrameAxis::First => DrallParts {
                    numerator: a.dual,
                    denominator: a.real,
                },
                FrameAxis::Second => DrallParts {
                    numerator: b.real * b.dual - a.real * a.dual,
                    denominator: b.real * b.real - a.real * a.real,
                },
                FrameAxis::Third => DrallParts {
                    numerator: b.dual,
                    denominator: b.real,
                },
            })
            .collect()
    }

    fn pitch_closed(&self, axis: FrameAxis) -> f64 {
        let starred = |v: &[DualScalar]| {
            closed_integral_real(&v.iter().map(|x| x.dual).collect::<Vec<_>>(), self.period)
        };
        match axis {
            FrameAxis::First => -self.orientation * starred(self.b),
            FrameAxis::Second => 0.0,
            FrameAxis::Third => -self.orientation * starred(self.a),
        }
    }

    /// Singular drall nodes become `None`.
    pub fn lenient(&self, axis: FrameAxis) -> Result<InvariantTriple, InvariantError> {
        let angle = angle_of_pitch(&self.d, &FrameVector::unit(self.d.tag, axis))?;
        let drall = Drall {
            samples: self.drall_parts(axis).iter().map(DrallParts::ratio).collect(),
        };
        Ok(InvariantTriple::new(angle, self.pitch_closed(axis), drall))
    }

    /// Singular drall nodes are an error.
    pub fn strict(&self, axis: FrameAxis) -> Result<InvariantTriple, InvariantError> {
        let parts = self.drall_parts(axis);
        if let Some((node, p)) = parts.iter().enumerate().find(|(_, p)| p.ratio().is_none()) {
            return Err(InvariantError::DrallSingularity {
                node,
                denominator: self.names[axis_index(axis)],
                value: p.denominator,
            });
        }
        self.lenient(axis)
    }
}

fn u_pair(frame: &SampledFrame) -> FramePair<'_> {
    FramePair {
        d: steiner(frame),
        orientation: 1.0,
        a: &frame.kappa,
        b: &frame.tau,
        period: frame.period,
        names: ["k1", "k2^2 - k1^2", "k2"],
    }
}

/// Invariants of the surfaces `(U₁)`, `(U₂)`, `(U₃)`.
pub fn axis_invariants(
    frame: &SampledFrame,
    axis: FrameAxis,
) -> Result<InvariantTriple, InvariantError> {
    u_pair(frame).strict(axis)
}

/// As [`axis_invariants`], but nodes with a vanishing drall denominator
/// carry `None` instead of failing the whole surface.
pub fn axis_invariants_lenient(frame: &SampledFrame, axis: FrameAxis) -> InvariantTriple {
    u_pair(frame)
        .lenient(axis)
        .expect("U-frame Steiner vector and axes share a frame")
}

/// Numerator and denominator of a pointwise drall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrallParts {
    pub numerator: f64,
    pub denominator: f64,
}

impl DrallParts {
    pub fn ratio(&self) -> Option<f64> {
        drall_ratio(self.numerator, self.denominator)
    }
}

/// Drall of a Pfaffian axis at one node, from the curvature pair `(a, b)`,
/// the axis angle `Ω` and its rate `Ω′` (all as dual scalars).
///
/// Spacelike case, `F = a·sinhΩ − b·coshΩ`:
/// `P = (−ω′ω*′ + f f*) / (f² − ω′²)`.
///
/// Timelike case, `G = a·coshΩ − b·sinhΩ`:
/// `P = (ω′ω*′ + g g*) / (g² + ω′²)`.
pub fn pfaff_drall_parts(
    case: PfaffCase,
    a: DualScalar,
    b: DualScalar,
    angle: DualScalar,
    rate: DualScalar,
) -> DrallParts {
    let (c, s) = (angle.cosh(), angle.sinh());
    let (w, ws) = (rate.real, rate.dual);
    match case {
        PfaffCase::Spacelike => {
            let f = a * s - b * c;
            DrallParts {
                numerator: -w * ws + f.real * f.dual,
                denominator: f.real * f.real - w * w,
            }
        }
        PfaffCase::Timelike => {
            let g = a * c - b * s;
            DrallParts {
                numerator: w * ws + g.real * g.dual,
                denominator: g.real * g.real + w * w,
            }
        }
    }
}

/// Timelike-case drall denominator in the printed form
/// `(a·sinhω − b·coshω)² − ω′²`, kept for auditing.
pub fn printed_timelike_denominator(
    a: DualScalar,
    b: DualScalar,
    angle: DualScalar,
    rate: DualScalar,
) -> f64 {
    let f = a.real * angle.real.sinh() - b.real * angle.real.cosh();
    f * f - rate.real * rate.real
}

/// Drall of a Pfaffian axis surface at every node. Valid for varying angle.
pub fn pfaff_drall(pf: &PfaffData, a: &[DualScalar], b: &[DualScalar]) -> Drall {
    let samples = (0..a.len())
        .map(|i| pfaff_drall_parts(pf.case, a[i], b[i], pf.angle[i], pf.angle_rate[i]).ratio())
        .collect();
    Drall { samples }
}

/// Mean angle, provided the angle is constant along the curve.
pub fn constant_angle(pf: &PfaffData) -> Result<DualScalar, InvariantError> {
    let (real_spread, dual_spread) = pf.angle_spread();
    if !(real_spread <= CONSTANT_ANGLE_TOLERANCE && dual_spread <= CONSTANT_ANGLE_TOLERANCE) {
        return Err(InvariantError::VaryingAngle {
            real_spread,
            dual_spread,
        });
    }
    Ok(pf.angle.iter().copied().sum::<DualScalar>() * (1.0 / pf.angle.len() as f64))
}

/// `Λ` of a Pfaffian axis from the integrals of the curvature pair:
/// spacelike `sinhΩ∮b − coshΩ∮a`, timelike `coshΩ∮b − sinhΩ∮a`.
pub fn pfaff_angle_closed(
    case: PfaffCase,
    angle: DualScalar,
    int_a: DualScalar,
    int_b: DualScalar,
) -> DualScalar {
    let (c, s) = (angle.cosh(), angle.sinh());
    match case {
        PfaffCase::Spacelike => s * int_b - c * int_a,
        PfaffCase::Timelike => c * int_b - s * int_a,
    }
}

/// `Λ` of a Pfaffian axis from the frame-surface angles `Λ₁`, `Λ₃`:
/// spacelike `sinhΩΛ₁ − coshΩΛ₃`, timelike `coshΩΛ₁ − sinhΩΛ₃`.
pub fn pfaff_angle_from_frame(
    case: PfaffCase,
    angle: DualScalar,
    first: DualScalar,
    third: DualScalar,
) -> DualScalar {
    let (c, s) = (angle.cosh(), angle.sinh());
    match case {
        PfaffCase::Spacelike => s * first - c * third,
        PfaffCase::Timelike => c * first - s * third,
    }
}

/// Closed-form pitch of a Pfaffian axis from the integrals of the pair:
///
/// spacelike `coshω∮a* − sinhω∮b* − ω*(coshω∮b − sinhω∮a)`,
/// timelike `sinhω∮a* − coshω∮b* − ω*(sinhω∮b − coshω∮a)`.
pub fn pfaff_pitch_closed(
    case: PfaffCase,
    angle: DualScalar,
    int_a: DualScalar,
    int_b: DualScalar,
) -> f64 {
    let (w, ws) = (angle.real, angle.dual);
    let (c, s) = (w.cosh(), w.sinh());
    match case {
        PfaffCase::Spacelike => {
            c * int_a.dual - s * int_b.dual - ws * (c * int_b.real - s * int_a.real)
        }
        PfaffCase::Timelike => {
            s * int_a.dual - c * int_b.dual - ws * (s * int_b.real - c * int_a.real)
        }
    }
}

/// Closed-form pitch of a Pfaffian axis from the frame-surface pitches and
/// real angles:
///
/// spacelike `sinhω L₁ − coshω L₃ − ω*(coshω λ₁ − sinhω λ₃)`,
/// timelike `coshω L₁ − sinhω L₃ − ω*(sinhω λ₁ − coshω λ₃)`.
pub fn pfaff_pitch_from_frame(
    case: PfaffCase,
    angle: DualScalar,
    first: &InvariantTriple,
    third: &InvariantTriple,
) -> f64 {
    let (w, ws) = (angle.real, angle.dual);
    let (c, s) = (w.cosh(), w.sinh());
    let (l1, l3) = (first.pitch_closed, third.pitch_closed);
    let (a1, a3) = (first.lambda, third.lambda);
    match case {
        PfaffCase::Spacelike => s * l1 - c * l3 - ws * (c * a1 - s * a3),
        PfaffCase::Timelike => c * l1 - s * l3 - ws * (s * a1 - c * a3),
    }
}

/// Shared by the `C` and `C̄` axes.
pub(crate) fn pfaff_pair_invariants(
    pf: &PfaffData,
    a: &[DualScalar],
    b: &[DualScalar],
    period: f64,
) -> Result<InvariantTriple, InvariantError> {
    let omega = constant_angle(pf)?;
    let int_a = closed_integral(a, period);
    let int_b = closed_integral(b, period);
    let angle = pfaff_angle_closed(pf.case, omega, int_a, int_b);
    let pitch = pfaff_pitch_closed(pf.case, omega, int_a, int_b);
    Ok(InvariantTriple::new(angle, pitch, pfaff_drall(pf, a, b)))
}

/// Invariants of the Pfaffian axis surface `(C)`. The angle must be
/// constant along the curve; use [`pfaff_drall`] for the drall alone.
pub fn pfaff_axis_invariants(
    frame: &SampledFrame,
    pf: &PfaffData,
) -> Result<InvariantTriple, InvariantError> {
    pfaff_pair_invariants(pf, &frame.kappa, &frame.tau, frame.period)
}
