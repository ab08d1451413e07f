//! Parallel ruled surfaces at a fixed dual angle `Φ` from the generator.
//!
//! `V₁ = coshΦU₁ + sinhΦU₃`, `V₂ = U₂`, `V₃ = −sinhΦU₁ − coshΦU₃`. The
//! `V`-frame obeys `V₁′ = PV₂`, `V₂′ = PV₁ − QV₃`, `V₃′ = QV₂` with
//! `P = κcoshΦ + τsinhΦ` and `Q = −κsinhΦ − τcoshΦ`.

use thiserror::Error;

use crate::dualnum::DualScalar;
use crate::frenet::{pfaffian_axis, FrameAxis, FrenetError, PfaffCase, PfaffData, SampledFrame};
use crate::invariants::{
    closed_integral, FramePair, pfaff_angle_closed, pfaff_drall, pfaff_pitch_closed,
    constant_angle, FrameTag, FrameVector, InvariantError, InvariantTriple,
};
use crate::minkowski::DualVec3;

/// `|p| = |P.real|` at or below this leaves `V₂` undefined.
pub const PARALLEL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParallelError {
    #[error("parallel angle must be finite, got {0}")]
    NonFiniteAngle(DualScalar),
    #[error("parallel surface degenerates at node {node} (p = {p:e})")]
    DegenerateParallel { node: usize, p: f64 },
    #[error("parallel Pfaffian vector is null at node {node} (|P| = |Q|)")]
    NullPfaffianBar { node: usize },
    #[error("parallel Pfaffian vector changes causal character at node {node}")]
    MixedCase { node: usize },
    #[error("angle Θ is not constant (spread {real_spread:e} + ε{dual_spread:e})")]
    VaryingTheta { real_spread: f64, dual_spread: f64 },
    #[error(transparent)]
    Invariant(InvariantError),
    #[error(transparent)]
    Frenet(FrenetError),
}

impl From<InvariantError> for ParallelError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::VaryingAngle {
                real_spread,
                dual_spread,
            } => ParallelError::VaryingTheta {
                real_spread,
                dual_spread,
            },
            other => ParallelError::Invariant(other),
        }
    }
}

impl From<FrenetError> for ParallelError {
    fn from(e: FrenetError) -> Self {
        match e {
            FrenetError::NullPfaffian { node } => ParallelError::NullPfaffianBar { node },
            FrenetError::MixedCase { node } => ParallelError::MixedCase { node },
            other => ParallelError::Frenet(other),
        }
    }
}

/// The fixed dual angle `Φ = φ + εφ*` between `U₁` and `V₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelAngle {
    phi: DualScalar,
}

impl ParallelAngle {
    pub fn new(phi: DualScalar) -> Result<Self, ParallelError> {
        if !phi.is_finite() {
            return Err(ParallelError::NonFiniteAngle(phi));
        }
        Ok(ParallelAngle { phi })
    }

    pub fn zero() -> Self {
        ParallelAngle {
            phi: DualScalar::ZERO,
        }
    }

    pub fn phi(&self) -> DualScalar {
        self.phi
    }
}

/// Rows express `(V₁, V₂, V₃)` through `(U₁, U₂, U₃)`:
/// `[[c, 0, s], [0, 1, 0], [−s, 0, −c]]`. The matrix squares to the identity.
pub fn transform_matrix(phi: DualScalar) -> [[DualScalar; 3]; 3] {
    let (c, s) = (phi.cosh(), phi.sinh());
    let (z, one) = (DualScalar::ZERO, DualScalar::ONE);
    [[c, z, s], [z, one, z], [-s, z, -c]]
}

/// Applies a frame matrix to a triad.
pub fn apply_matrix(m: &[[DualScalar; 3]; 3], triad: [DualVec3; 3]) -> [DualVec3; 3] {
    m.map(|row| {
        row.iter()
            .zip(triad)
            .fold(DualVec3::ZERO, |acc, (k, e)| acc + e.scale(*k))
    })
}

/// The `V`-frame and its curvatures at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelFrame {
    pub period: f64,
    pub phi: DualScalar,
    pub v1: Vec<DualVec3>,
    pub v2: Vec<DualVec3>,
    pub v3: Vec<DualVec3>,
    /// `P = p + εp*`
    pub p: Vec<DualScalar>,
    /// `Q = q + εq*`
    pub q: Vec<DualScalar>,
}

pub fn parallel_frame(
    frame: &SampledFrame,
    ang: ParallelAngle,
) -> Result<ParallelFrame, ParallelError> {
    let phi = ang.phi();
    let (c, s) = (phi.cosh(), phi.sinh());
    let m = transform_matrix(phi);
    let n = frame.len();
    let (mut v1, mut v2, mut v3) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    let (mut p, mut q) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for i in 0..n {
        let pi = frame.kappa[i] * c + frame.tau[i] * s;
        if pi.real.abs() <= PARALLEL_TOLERANCE {
            return Err(ParallelError::DegenerateParallel { node: i, p: pi.real });
        }
        let [a, b, d] = apply_matrix(&m, [frame.u1[i], frame.u2[i], frame.u3[i]]);
        v1.push(a);
        v2.push(b);
        v3.push(d);
        p.push(pi);
        q.push(-(frame.kappa[i] * s) - frame.tau[i] * c);
    }
    Ok(ParallelFrame {
        period: frame.period,
        phi,
        v1,
        v2,
        v3,
        p,
        q,
    })
}

impl ParallelFrame {
    pub fn len(&self) -> usize {
        self.v1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v1.is_empty()
    }

    pub fn axis(&self, which: FrameAxis) -> &[DualVec3] {
        match which {
            FrameAxis::First => &self.v1,
            FrameAxis::Second => &self.v2,
            FrameAxis::Third => &self.v3,
        }
    }

    /// `Ψ̄ = QV₁ − PV₃` at node `i`.
    pub fn psi_bar(&self, i: usize) -> DualVec3 {
        self.v1[i].scale(self.q[i]) - self.v3[i].scale(self.p[i])
    }

    /// Steiner vector on the `V`-frame: `D = −V₁∮Q + V₃∮P`.
    pub fn steiner(&self) -> FrameVector {
        let int_p = closed_integral(&self.p, self.period);
        let int_q = closed_integral(&self.q, self.period);
        FrameVector::new(FrameTag::VFrame, [-int_q, DualScalar::ZERO, int_p])
    }

    fn pair(&self) -> FramePair<'_> {
        FramePair {
            d: self.steiner(),
            orientation: -1.0,
            a: &self.p,
            b: &self.q,
            period: self.period,
            names: ["p", "q^2 - p^2", "q"],
        }
    }

    /// Angle `Θ` and axis `C̄` of `Ψ̄`: spacelike when `|P| > |Q|`, with
    /// `tanhΘ = Q/P` and `C̄ = sinhΘV₁ − coshΘV₃`; timelike otherwise, with
    /// `tanhΘ = P/Q` and `C̄ = coshΘV₁ − sinhΘV₃`.
    pub fn pfaffian_bar(&self) -> Result<PfaffData, ParallelError> {
        Ok(pfaffian_axis(
            self.period,
            &self.p,
            &self.q,
            &self.v1,
            &self.v3,
        )?)
    }
}

/// Invariants of `(V₁)`, `(V₂)`, `(V₃)`:
///
/// | axis | `Λ`    | `L`    | `P`                      |
/// |------|--------|--------|--------------------------|
/// | `V₁` | `−∮Q`  | `∮q*`  | `p*/p`                   |
/// | `V₂` | `0`    | `0`    | `(qq* − pp*)/(q² − p²)`  |
/// | `V₃` | `−∮P`  | `∮p*`  | `q*/q`                   |
pub fn v_axis_invariants(
    pframe: &ParallelFrame,
    axis: FrameAxis,
) -> Result<InvariantTriple, ParallelError> {
    Ok(pframe.pair().strict(axis)?)
}

/// As [`v_axis_invariants`], with singular drall nodes left as `None`.
pub fn v_axis_invariants_lenient(pframe: &ParallelFrame, axis: FrameAxis) -> InvariantTriple {
    pframe
        .pair()
        .lenient(axis)
        .expect("V-frame Steiner vector and axes share a frame")
}

/// Predicted `V`-frame invariants from the `U`-frame ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryPrediction {
    /// `coshΦΛ_U₁ + sinhΦΛ_U₃`
    pub angle_v1: DualScalar,
    /// `coshφL_u₁ + sinhφL_u₃ − φ*(sinhφλ_u₁ + coshφλ_u₃)`
    pub pitch_v1: f64,
    /// `−sinhΦΛ_U₁ − coshΦΛ_U₃`
    pub angle_v3: DualScalar,
    /// `−sinhφL_u₁ − coshφL_u₃ + φ*(coshφλ_u₁ + sinhφλ_u₃)`
    pub pitch_v3: f64,
}

pub fn corollary_expand(
    u1: &InvariantTriple,
    u3: &InvariantTriple,
    ang: ParallelAngle,
) -> CorollaryPrediction {
    let phi = ang.phi();
    let (c, s) = (phi.cosh(), phi.sinh());
    let (cr, sr, ps) = (c.real, s.real, phi.dual);
    let (l1, l3) = (u1.pitch_closed, u3.pitch_closed);
    let (a1, a3) = (u1.lambda, u3.lambda);
    CorollaryPrediction {
        angle_v1: c * u1.angle + s * u3.angle,
        pitch_v1: cr * l1 + sr * l3 - ps * (sr * a1 + cr * a3),
        angle_v3: -(s * u1.angle) - c * u3.angle,
        pitch_v3: -sr * l1 - cr * l3 + ps * (cr * a1 + sr * a3),
    }
}

/// `L_V₁` through the `U`-frame curvature integrals:
/// `−sinhφ∮k₁* − coshφ∮k₂* − φ*(coshφ∮k₁ + sinhφ∮k₂)`.
pub fn v1_pitch_expanded(phi: DualScalar, int_kappa: DualScalar, int_tau: DualScalar) -> f64 {
    let (c, s, ps) = (phi.real.cosh(), phi.real.sinh(), phi.dual);
    -s * int_kappa.dual - c * int_tau.dual - ps * (c * int_kappa.real + s * int_tau.real)
}

/// `L_V₃` through the `U`-frame curvature integrals:
/// `coshφ∮k₁* + sinhφ∮k₂* + φ*(sinhφ∮k₁ + coshφ∮k₂)`.
pub fn v3_pitch_expanded(phi: DualScalar, int_kappa: DualScalar, int_tau: DualScalar) -> f64 {
    let (c, s, ps) = (phi.real.cosh(), phi.real.sinh(), phi.dual);
    c * int_kappa.dual + s * int_tau.dual + ps * (s * int_kappa.real + c * int_tau.real)
}

/// `P_V₁` through `U`-frame curvatures:
/// `(k₁*coshφ + k₂*sinhφ)/(k₁coshφ + k₂sinhφ) + φ*(k₁sinhφ + k₂coshφ)/(k₁coshφ + k₂sinhφ)`.
pub fn v1_drall_expanded(phi: DualScalar, kappa: DualScalar, tau: DualScalar) -> f64 {
    let (c, s, ps) = (phi.real.cosh(), phi.real.sinh(), phi.dual);
    let den = kappa.real * c + tau.real * s;
    (kappa.dual * c + tau.dual * s) / den + ps * (kappa.real * s + tau.real * c) / den
}

/// `P_V₃` through `U`-frame curvatures:
/// `(−k₁*sinhφ − k₂*coshφ)/(−k₁sinhφ − k₂coshφ) − φ*(k₁coshφ + k₂sinhφ)/(−k₁sinhφ − k₂coshφ)`.
pub fn v3_drall_expanded(phi: DualScalar, kappa: DualScalar, tau: DualScalar) -> f64 {
    let (c, s, ps) = (phi.real.cosh(), phi.real.sinh(), phi.dual);
    let den = -kappa.real * s - tau.real * c;
    (-kappa.dual * s - tau.dual * c) / den - ps * (kappa.real * c + tau.real * s) / den
}

/// Invariants of the axis surface `(C̄)` of `Ψ̄`. `Θ` must be constant.
///
/// Spacelike: `Λ = −sinhΘ∮Q + coshΘ∮P`,
/// `L = −coshθ∮p* + sinhθ∮q* + θ*(coshθ∮q − sinhθ∮p)`.
/// Timelike: `Λ = −coshΘ∮Q + sinhΘ∮P`,
/// `L = −sinhθ∮p* + coshθ∮q* + θ*(sinhθ∮q − coshθ∮p)`.
pub fn cbar_invariants(
    pframe: &ParallelFrame,
    bar: &PfaffData,
) -> Result<InvariantTriple, ParallelError> {
    let theta = constant_angle(bar)?;
    let int_p = closed_integral(&pframe.p, pframe.period);
    let int_q = closed_integral(&pframe.q, pframe.period);
    // D on the V-frame is minus the integrated Ψ̄, hence the sign flips
    let angle = -pfaff_angle_closed(bar.case, theta, int_p, int_q);
    let pitch = -pfaff_pitch_closed(bar.case, theta, int_p, int_q);
    Ok(InvariantTriple::new(
        angle,
        pitch,
        pfaff_drall(bar, &pframe.p, &pframe.q),
    ))
}

/// `C̄` through the `U`-frame: spacelike `sinh(Θ+Φ)U₁ + cosh(Θ+Φ)U₃`,
/// timelike `cosh(Θ+Φ)U₁ + sinh(Θ+Φ)U₃`.
pub fn cbar_composed(case: PfaffCase, sum: DualScalar, u1: DualVec3, u3: DualVec3) -> DualVec3 {
    let (c, s) = (sum.cosh(), sum.sinh());
    match case {
        PfaffCase::Spacelike => u1.scale(s) + u3.scale(c),
        PfaffCase::Timelike => u1.scale(c) + u3.scale(s),
    }
}

/// `Λ_C̄` through the `U`-frame angles: spacelike
/// `sinh(Θ+Φ)Λ_U₁ + cosh(Θ+Φ)Λ_U₃`, timelike
/// `cosh(Θ+Φ)Λ_U₁ + sinh(Θ+Φ)Λ_U₃`.
pub fn cbar_angle_composed(
    case: PfaffCase,
    sum: DualScalar,
    angle_u1: DualScalar,
    angle_u3: DualScalar,
) -> DualScalar {
    let (c, s) = (sum.cosh(), sum.sinh());
    match case {
        PfaffCase::Spacelike => s * angle_u1 + c * angle_u3,
        PfaffCase::Timelike => c * angle_u1 + s * angle_u3,
    }
}

/// Which starred factor multiplies the `λ` terms in the composed timelike
/// pitch of `C̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarFactor {
    /// `φ* + θ*`
    Corrected,
    /// `φ′* + θ*`, with `φ′* = dφ*/dt = 0` because `Φ` is constant.
    Literal,
}

/// `L_C̄` through the `U`-frame invariants, with `ξ = θ + φ`:
///
/// spacelike `sinhξ L_U₁ + coshξ L_U₃ − (φ* + θ*)(coshξ λ_U₁ + sinhξ λ_U₃)`,
/// timelike `coshξ L_U₁ + sinhξ L_U₃ − (φ* + θ*)(sinhξ λ_U₁ + coshξ λ_U₃)`.
pub fn cbar_pitch_composed(
    case: PfaffCase,
    theta: DualScalar,
    phi: DualScalar,
    u1: &InvariantTriple,
    u3: &InvariantTriple,
    star: StarFactor,
) -> f64 {
    let xi = theta.real + phi.real;
    let (c, s) = (xi.cosh(), xi.sinh());
    let factor = match star {
        StarFactor::Corrected => phi.dual + theta.dual,
        StarFactor::Literal => theta.dual,
    };
    let (l1, l3) = (u1.pitch_closed, u3.pitch_closed);
    let (a1, a3) = (u1.lambda, u3.lambda);
    match case {
        PfaffCase::Spacelike => s * l1 + c * l3 - factor * (c * a1 + s * a3),
        PfaffCase::Timelike => c * l1 + s * l3 - factor * (s * a1 + c * a3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{frenet, pfaffian, sample_curve, CurveSpec, Moment};
    use crate::invariants::axis_invariants;
    use std::f64::consts::PI;

    fn d(r: f64, e: f64) -> DualScalar {
        DualScalar::new(r, e)
    }

    fn circle() -> SampledFrame {
        let spec = CurveSpec::hyperboloid_circle(0.6f64.atanh(), Moment::Point { p: [0.2, -0.1, 0.3] });
        frenet(&sample_curve(&spec, 512).unwrap()).unwrap()
    }

    #[test]
    fn zero_angle_reduces_to_u_frame() {
        let f = circle();
        let pf = parallel_frame(&f, ParallelAngle::zero()).unwrap();
        for i in 0..f.len() {
            assert_eq!(pf.v1[i], f.u1[i]);
            assert_eq!(pf.v2[i], f.u2[i]);
            assert_eq!(pf.v3[i], -f.u3[i]);
            assert_eq!(pf.p[i], f.kappa[i]);
            assert_eq!(pf.q[i], -f.tau[i]);
        }
    }

    #[test]
    fn real_angle_curvatures() {
        let f = circle();
        let phi0 = 0.5;
        let pf = parallel_frame(&f, ParallelAngle::new(d(phi0, 0.0)).unwrap()).unwrap();
        for i in 0..f.len() {
            let (k1, k2) = (f.kappa[i].real, f.tau[i].real);
            assert!((pf.p[i].real - (k1 * phi0.cosh() + k2 * phi0.sinh())).abs() < 1e-14);
            assert!((pf.q[i].real - (-k1 * phi0.sinh() - k2 * phi0.cosh())).abs() < 1e-14);
        }
    }

    #[test]
    fn matrix_is_involution() {
        let m = transform_matrix(d(0.5, 0.2));
        for i in 0..3 {
            for j in 0..3 {
                let e: DualScalar = (0..3).map(|k| m[i][k] * m[k][j]).sum();
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((e - d(id, 0.0)).max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rotation_vectors_are_opposite() {
        let f = circle();
        let pf = parallel_frame(&f, ParallelAngle::new(d(0.5, 0.2)).unwrap()).unwrap();
        for i in 0..f.len() {
            assert!((f.psi(i) + pf.psi_bar(i)).max_abs() < 1e-13);
        }
        let du = crate::invariants::steiner(&f).switch_frame(pf.phi);
        let dv = pf.steiner();
        for k in 0..3 {
            assert!((du.c[k] - dv.c[k]).max_abs() < 1e-12);
        }
    }

    #[test]
    fn corollary_matches_theorems() {
        let f = circle();
        let ang = ParallelAngle::new(d(0.5, 0.2)).unwrap();
        let pf = parallel_frame(&f, ang).unwrap();
        let u1 = axis_invariants(&f, FrameAxis::First).unwrap();
        let u3 = axis_invariants(&f, FrameAxis::Third).unwrap();
        let v1 = v_axis_invariants(&pf, FrameAxis::First).unwrap();
        let v3 = v_axis_invariants(&pf, FrameAxis::Third).unwrap();
        let pred = corollary_expand(&u1, &u3, ang);
        assert!((pred.angle_v1 - v1.angle).max_abs() < 1e-10);
        assert!((pred.angle_v3 - v3.angle).max_abs() < 1e-10);
        assert!((pred.pitch_v1 - v1.pitch_closed).abs() < 1e-10);
        assert!((pred.pitch_v3 - v3.pitch_closed).abs() < 1e-10);
        assert!((v1.pitch - v1.pitch_closed).abs() < 1e-10);
        let want = 0.5f64.cosh() * (-2.5 * PI) + 0.5f64.sinh() * (1.5 * PI);
        assert!((v1.lambda - want).abs() < 1e-8);
    }

    #[test]
    fn central_normal_drall_is_parallel_invariant() {
        let f = circle();
        let pf = parallel_frame(&f, ParallelAngle::new(d(0.5, 0.2)).unwrap()).unwrap();
        let u2 = axis_invariants(&f, FrameAxis::Second).unwrap();
        let v2 = v_axis_invariants(&pf, FrameAxis::Second).unwrap();
        assert_eq!(v2.angle, DualScalar::ZERO);
        assert_eq!(v2.pitch_closed, 0.0);
        for (a, b) in u2.drall.defined().zip(v2.drall.defined()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_cbar_case_and_compositions() {
        let f = circle();
        let ang = ParallelAngle::new(d(0.5, 0.2)).unwrap();
        let pf = parallel_frame(&f, ang).unwrap();
        let bar = pf.pfaffian_bar().unwrap();
        // |k₁| < |k₂| survives any Φ, since p² − q² = k₁² − k₂²
        assert_eq!(bar.case, PfaffCase::Timelike);
        let c = pfaffian(&f).unwrap();
        let cb = cbar_invariants(&pf, &bar).unwrap();
        let u1 = axis_invariants(&f, FrameAxis::First).unwrap();
        let u3 = axis_invariants(&f, FrameAxis::Third).unwrap();
        let theta = constant_angle(&bar).unwrap();
        let composed = cbar_angle_composed(bar.case, theta + ang.phi(), u1.angle, u3.angle);
        assert!((composed - cb.angle).max_abs() < 1e-9);
        let lc = cbar_pitch_composed(bar.case, theta, ang.phi(), &u1, &u3, StarFactor::Corrected);
        assert!((lc - cb.pitch_closed).abs() < 1e-9);
        assert!((cb.pitch - cb.pitch_closed).abs() < 1e-9);
        // Θ = −(Ω + Φ): the axes coincide in the timelike case
        for i in 0..f.len() {
            assert!((bar.angle[i] + c.angle[i] + ang.phi()).max_abs() < 1e-9);
            assert!((bar.axis[i] - c.axis[i]).max_abs() < 1e-9);
            let via_u = cbar_composed(bar.case, bar.angle[i] + ang.phi(), f.u1[i], f.u3[i]);
            assert!((via_u - bar.axis[i]).max_abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_parallel_is_reported() {
        let f = circle();
        // p = 0.75 coshφ − 1.25 sinhφ vanishes at tanhφ = 0.6
        let phi = 0.6f64.atanh();
        let err = parallel_frame(&f, ParallelAngle::new(d(phi, 0.0)).unwrap());
        assert!(matches!(err, Err(ParallelError::DegenerateParallel { node: 0, .. })));
    }

    #[test]
    fn non_finite_angle_is_rejected() {
        assert!(ParallelAngle::new(d(f64::NAN, 0.0)).is_err());
        assert!(ParallelAngle::new(d(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn expanded_forms_match_theorem_integrands() {
        let phi = d(0.5, 0.2);
        let (k, t) = (d(0.75, 0.3), d(-1.25, -0.1));
        let (c, s) = (phi.cosh(), phi.sinh());
        let p = k * c + t * s;
        let q = -(k * s) - t * c;
        assert!((v1_drall_expanded(phi, k, t) - p.dual / p.real).abs() < 1e-14);
        assert!((v3_drall_expanded(phi, k, t) - q.dual / q.real).abs() < 1e-14);
        assert!((v1_pitch_expanded(phi, k, t) - q.dual).abs() < 1e-14);
        assert!((v3_pitch_expanded(phi, k, t) - p.dual).abs() < 1e-14);
    }
}
