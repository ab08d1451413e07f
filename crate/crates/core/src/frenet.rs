//! Closed dual curves on a periodic grid and their dual Frenet apparatus.
//!
//! A closed timelike dual curve `U(t) = e(t) + ε α(t)∧e(t)` is sampled on
//! `N` uniform nodes over one period. Derivatives use fourth-order periodic
//! central differences. The frame is
//!
//! ```text
//! U₁ = U,   U₂ = U′/∥U′∥,   U₃ = U₁ ∧ U₂
//! ```
//!
//! with dual curvature `κ = ⟨U₁′, U₂⟩` and dual torsion `τ = ⟨U₃′, U₂⟩`, so
//! that `U₁′ = κU₂`, `U₂′ = κU₁ − τU₃`, `U₃′ = τU₂`.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualnum::{DualError, DualScalar};
use crate::minkowski::{GeomError, RealVec3, DualVec3, NULL_TOLERANCE};

/// Smallest admissible grid size.
pub const MIN_SAMPLES: usize = 16;

/// `||κ| − |τ||` at or below this makes the Pfaffian vector null.
pub const PFAFF_NULL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrenetError {
    #[error("bad curve spec: {0}")]
    BadSpec(String),
    #[error("director is not timelike at node {node} (⟨e,e⟩ = {square})")]
    NonTimelikeDirector { node: usize, square: f64 },
    #[error("curve has (numerically) zero speed at node {node}")]
    DegenerateSpeed { node: usize },
    #[error("tangent image is not spacelike at node {node}")]
    NonSpacelikeTangentImage { node: usize },
    #[error("Pfaffian vector is null at node {node} (|curvature| = |torsion|)")]
    NullPfaffian { node: usize },
    #[error("Pfaffian vector changes causal character at node {node}")]
    MixedCase { node: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Dual(#[from] DualError),
}

/// Truncated Fourier series `Σ cos[k]·cos(kνt) + Σ sin[k−1]·sin(kνt)` with
/// `ν = 2π / period`. `cos[0]` is the constant term; `sin` starts at `k = 1`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSeries {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        FourierSeries { cos, sin }
    }

    pub fn constant(c: f64) -> Self {
        FourierSeries::new(vec![c], vec![])
    }

    pub fn eval(&self, t: f64, period: f64) -> f64 {
        let nu = TAU / period;
        let mut acc = 0.0;
        for (k, c) in self.cos.iter().enumerate() {
            acc += c * (k as f64 * nu * t).cos();
        }
        for (k, s) in self.sin.iter().enumerate() {
            acc += s * ((k + 1) as f64 * nu * t).sin();
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.cos.iter().chain(&self.sin).all(|c| c.is_finite())
    }
}

fn eval3(components: &[FourierSeries; 3], t: f64, period: f64) -> RealVec3 {
    RealVec3::new(
        components[0].eval(t, period),
        components[1].eval(t, period),
        components[2].eval(t, period),
    )
}

/// Generator family for the real (direction) part of the curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Director {
    /// `e(t) = (cosh a, sinh a·cos νt, sinh a·sin νt)`.
    HyperboloidCircle { a: f64 },
    /// One Fourier series per coordinate; normalized to `⟨e,e⟩ = −1`.
    Fourier { components: [FourierSeries; 3] },
}

impl Director {
    /// Unnormalized director at parameter `t`.
    pub fn eval(&self, t: f64, period: f64) -> RealVec3 {
        match self {
            Director::HyperboloidCircle { a } => {
                let nu = TAU / period;
                RealVec3::new(a.cosh(), a.sinh() * (nu * t).cos(), a.sinh() * (nu * t).sin())
            }
            Director::Fourier { components } => eval3(components, t, period),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            Director::HyperboloidCircle { .. } => "hyperboloid_circle",
            Director::Fourier { .. } => "fourier",
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Director::HyperboloidCircle { a } => a.is_finite(),
            Director::Fourier { components } => components.iter().all(FourierSeries::is_finite),
        }
    }
}

/// Generator of the moment part: the ruling through `α(t)` has moment
/// `α(t) ∧ e(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Moment {
    /// Every ruling passes through the origin.
    Zero,
    /// Every ruling passes through the fixed point `p`.
    Point { p: [f64; 3] },
    /// Rulings pass through the closed base curve `α(t)`.
    BaseCurve { components: [FourierSeries; 3] },
}

impl Moment {
    pub fn base_point(&self, t: f64, period: f64) -> RealVec3 {
        match self {
            Moment::Zero => RealVec3::ZERO,
            Moment::Point { p } => RealVec3(*p),
            Moment::BaseCurve { components } => eval3(components, t, period),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Moment::Zero => "zero",
            Moment::Point { .. } => "point",
            Moment::BaseCurve { .. } => "base_curve",
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Moment::Zero => true,
            Moment::Point { p } => p.iter().all(|c| c.is_finite()),
            Moment::BaseCurve { components } => components.iter().all(FourierSeries::is_finite),
        }
    }
}

/// A closed dual curve described by generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub period: f64,
    pub director: Director,
    pub moment: Moment,
}

impl CurveSpec {
    pub fn new(period: f64, director: Director, moment: Moment) -> Self {
        CurveSpec {
            period,
            director,
            moment,
        }
    }

    /// The circle `(cosh a, sinh a cos t, sinh a sin t)` over `[0, 2π)`.
    pub fn hyperboloid_circle(a: f64, moment: Moment) -> Self {
        CurveSpec::new(TAU, Director::HyperboloidCircle { a }, moment)
    }

    /// Parameter value of node `i` on an `n`-node grid.
    pub fn node_time(&self, i: usize, n: usize) -> f64 {
        i as f64 * self.period / n as f64
    }

    /// Unit timelike director at `t`, normalized to `⟨e,e⟩ = −1` with
    /// the sign of its time component kept.
    pub fn unit_director(&self, t: f64) -> Option<RealVec3> {
        let e = self.director.eval(t, self.period);
        let sq = e.square();
        if sq.is_nan() || sq >= -NULL_TOLERANCE {
            return None;
        }
        Some(e * (1.0 / (-sq).sqrt()))
    }
}

/// A closed curve of dual vectors sampled at `t_i = i·period/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCurve {
    pub period: f64,
    pub nodes: Vec<DualVec3>,
}

impl DualCurve {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Value at any integer node index, wrapping around the period.
    pub fn at(&self, i: isize) -> DualVec3 {
        let n = self.nodes.len() as isize;
        self.nodes[i.rem_euclid(n) as usize]
    }
}

/// Evaluates `U(t_i) = e(t_i) + ε·α(t_i)∧e(t_i)` on an `n`-node grid.
pub fn sample_curve(spec: &CurveSpec, n: usize) -> Result<DualCurve, FrenetError> {
    if !(spec.period.is_finite() && spec.period > 0.0) {
        return Err(FrenetError::BadSpec(format!(
            "period must be positive, got {}",
            spec.period
        )));
    }
    if n < MIN_SAMPLES {
        return Err(FrenetError::BadSpec(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if !spec.director.is_finite() || !spec.moment.is_finite() {
        return Err(FrenetError::BadSpec("non-finite generator coefficient".into()));
    }
    let nodes = (0..n)
        .map(|i| {
            let t = spec.node_time(i, n);
            let e = spec.unit_director(t).ok_or_else(|| {
                FrenetError::NonTimelikeDirector {
                    node: i,
                    square: spec.director.eval(t, spec.period).square(),
                }
            })?;
            let alpha = spec.moment.base_point(t, spec.period);
            Ok(DualVec3::new(e, alpha.cross(e)))
        })
        .collect::<Result<Vec<_>, FrenetError>>()?;
    Ok(DualCurve {
        period: spec.period,
        nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Fourth-order central differences with periodic wraparound, step
/// `h = period / N`.
///
/// # Panics
///
/// Panics if fewer than five samples are given.
pub fn diff_periodic<T>(samples: &[T], period: f64, order: DerivOrder) -> Vec<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = samples.len();
    assert!(n >= 5, "periodic differences need at least 5 samples");
    let h = period / n as f64;
    let at = |i: usize, off: isize| samples[(i as isize + off).rem_euclid(n as isize) as usize];
    (0..n)
        .map(|i| {
            let (m2, m1, p1, p2) = (at(i, -2), at(i, -1), at(i, 1), at(i, 2));
            match order {
                DerivOrder::First => ((m2 - p2) + (p1 - m1) * 8.0) * (1.0 / (12.0 * h)),
                DerivOrder::Second => {
                    let c = samples[i];
                    (((m1 + p1) * 16.0 - (m2 + p2)) - c * 30.0) * (1.0 / (12.0 * h * h))
                }
            }
        })
        .collect()
}

/// Dual Frenet frame and curvatures at every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFrame {
    pub period: f64,
    pub u1: Vec<DualVec3>,
    pub u2: Vec<DualVec3>,
    pub u3: Vec<DualVec3>,
    /// `κ = k₁ + εk₁*`
    pub kappa: Vec<DualScalar>,
    /// `τ = k₂ + εk₂*`
    pub tau: Vec<DualScalar>,
}

impl SampledFrame {
    pub fn len(&self) -> usize {
        self.u1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u1.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.period / self.len() as f64
    }

    /// Instantaneous rotation vector `Ψ = τU₁ − κU₃` at node `i`.
    pub fn psi(&self, i: usize) -> DualVec3 {
        self.u1[i].scale(self.tau[i]) - self.u3[i].scale(self.kappa[i])
    }

    pub fn axis(&self, which: FrameAxis) -> &[DualVec3] {
        match which {
            FrameAxis::First => &self.u1,
            FrameAxis::Second => &self.u2,
            FrameAxis::Third => &self.u3,
        }
    }
}

/// Index of a frame axis, shared by the `U` and `V` frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameAxis {
    First,
    Second,
    Third,
}

/// Builds the dual Frenet apparatus of a sampled closed curve.
pub fn frenet(curve: &DualCurve) -> Result<SampledFrame, FrenetError> {
    let n = curve.len();
    if n < MIN_SAMPLES {
        return Err(FrenetError::BadSpec(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    for u in &curve.nodes {
        u.check_unit_line()?;
        if !u.real.causal().eq(&crate::minkowski::CausalClass::Timelike) {
            return Err(FrenetError::BadSpec("curve is not timelike".into()));
        }
    }
    let period = curve.period;
    let u1 = curve.nodes.clone();
    let du1 = diff_periodic(&u1, period, DerivOrder::First);

    let mut u2 = Vec::with_capacity(n);
    for (i, d) in du1.iter().enumerate() {
        let sq = d.real.square();
        if sq.abs() <= NULL_TOLERANCE {
            return Err(FrenetError::DegenerateSpeed { node: i });
        }
        if sq < 0.0 {
            return Err(FrenetError::NonSpacelikeTangentImage { node: i });
        }
        // remove the O(h⁴) component along U₁ left by the difference stencil
        let w = *d + u1[i].scale(d.dot(u1[i]));
        let speed = w.norm()?;
        u2.push(w.scale(speed.recip()?));
    }
    let u3: Vec<DualVec3> = u1.iter().zip(&u2).map(|(a, b)| a.cross(*b)).collect();
    let du3 = diff_periodic(&u3, period, DerivOrder::First);

    let kappa = du1.iter().zip(&u2).map(|(d, e)| d.dot(*e)).collect();
    let tau = du3.iter().zip(&u2).map(|(d, e)| d.dot(*e)).collect();

    Ok(SampledFrame {
        period,
        u1,
        u2,
        u3,
        kappa,
        tau,
    })
}

/// Causal character of the instantaneous rotation vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PfaffCase {
    /// `|curvature| > |torsion|`
    Spacelike,
    /// `|curvature| < |torsion|`
    Timelike,
}

/// Hyperbolic angle and unit axis of a Pfaffian vector along the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PfaffData {
    pub case: PfaffCase,
    /// `Ω = ω + εω*` per node.
    pub angle: Vec<DualScalar>,
    /// `(ω′, ω*′)` per node, by periodic differences.
    pub angle_rate: Vec<DualScalar>,
    /// Unit axis `C` per node.
    pub axis: Vec<DualVec3>,
}

impl PfaffData {
    /// Spread `max − min` of the real and dual parts of the angle.
    pub fn angle_spread(&self) -> (f64, f64) {
        let spread = |f: fn(&DualScalar) -> f64| {
            let (lo, hi) = self
                .angle
                .iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                    (lo.min(x), hi.max(x))
                });
            hi - lo
        };
        (spread(|a| a.real), spread(|a| a.dual))
    }

    /// True when both angle components are constant within `tol`.
    pub fn is_constant(&self, tol: f64) -> bool {
        let (r, d) = self.angle_spread();
        r <= tol && d <= tol
    }
}

/// Unit axis of `rotation = torsion·E₁ − curvature·E₃` for a frame with
/// timelike `E₁` and the Frenet pair `(curvature, torsion)`.
///
/// Spacelike case: `tanh Ω = torsion/curvature`, `C = sinh Ω E₁ − cosh Ω E₃`.
/// Timelike case: `tanh Ω = curvature/torsion`, `C = cosh Ω E₁ − sinh Ω E₃`.
pub fn pfaffian_axis(
    period: f64,
    curvature: &[DualScalar],
    torsion: &[DualScalar],
    e1: &[DualVec3],
    e3: &[DualVec3],
) -> Result<PfaffData, FrenetError> {
    let mut case = None;
    for (i, (k, t)) in curvature.iter().zip(torsion).enumerate() {
        let (k, t) = (k.real.abs(), t.real.abs());
        if (k - t).abs() <= PFAFF_NULL_TOLERANCE {
            return Err(FrenetError::NullPfaffian { node: i });
        }
        let here = if k > t {
            PfaffCase::Spacelike
        } else {
            PfaffCase::Timelike
        };
        match case {
            None => case = Some(here),
            Some(c) if c != here => return Err(FrenetError::MixedCase { node: i }),
            _ => {}
        }
    }
    let case = case.ok_or_else(|| FrenetError::BadSpec("empty frame".into()))?;

    let angle = curvature
        .iter()
        .zip(torsion)
        .map(|(k, t)| {
            let ratio = match case {
                PfaffCase::Spacelike => t.checked_div(*k)?,
                PfaffCase::Timelike => k.checked_div(*t)?,
            };
            Ok(ratio.artanh()?)
        })
        .collect::<Result<Vec<_>, FrenetError>>()?;
    let angle_rate = diff_periodic(&angle, period, DerivOrder::First);
    let axis = angle
        .iter()
        .zip(e1.iter().zip(e3))
        .map(|(w, (a, b))| axis_vector(case, *w, *a, *b))
        .collect();
    Ok(PfaffData {
        case,
        angle,
        angle_rate,
        axis,
    })
}

/// The case formula for the unit axis from its angle and frame vectors.
pub fn axis_vector(case: PfaffCase, angle: DualScalar, e1: DualVec3, e3: DualVec3) -> DualVec3 {
    let (c, s) = (angle.cosh(), angle.sinh());
    match case {
        PfaffCase::Spacelike => e1.scale(s) - e3.scale(c),
        PfaffCase::Timelike => e1.scale(c) - e3.scale(s),
    }
}

/// Pfaffian data of the `U`-frame: `Ψ = τU₁ − κU₃`.
pub fn pfaffian(frame: &SampledFrame) -> Result<PfaffData, FrenetError> {
    pfaffian_axis(frame.period, &frame.kappa, &frame.tau, &frame.u1, &frame.u3)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `cosh a = 1.25`, `sinh a = 0.75`.
    fn circle_a() -> f64 {
        0.6f64.atanh()
    }

    #[test]
    fn hyperboloid_circle_first_node() {
        let spec = CurveSpec::hyperboloid_circle(circle_a(), Moment::Zero);
        let curve = sample_curve(&spec, 64).unwrap();
        let u = curve.nodes[0];
        assert!((u.real - RealVec3::new(1.25, 0.75, 0.0)).max_abs() < 1e-15);
        assert_eq!(u.dual, RealVec3::ZERO);
        assert!((u.real.square() + 1.0).abs() < 1e-14);
        // node N wraps to node 0
        assert_eq!(curve.at(64), curve.nodes[0]);
        assert_eq!(curve.at(-1), curve.nodes[63]);
    }

    #[test]
    fn point_moment_is_point_cross_director() {
        let p = [0.3, -0.2, 0.5];
        let spec = CurveSpec::hyperboloid_circle(circle_a(), Moment::Point { p });
        let curve = sample_curve(&spec, 32).unwrap();
        for u in &curve.nodes {
            assert_eq!(u.dual, RealVec3(p).cross(u.real));
        }
    }

    #[test]
    fn sampling_rejects_bad_input() {
        let spec = CurveSpec::hyperboloid_circle(circle_a(), Moment::Zero);
        assert!(matches!(sample_curve(&spec, 8), Err(FrenetError::BadSpec(_))));
        let neg = CurveSpec {
            period: -1.0,
            ..spec.clone()
        };
        assert!(matches!(sample_curve(&neg, 32), Err(FrenetError::BadSpec(_))));

        // spacelike director at t = 0: (0.5, 1, 0)
        let bad = CurveSpec::new(
            TAU,
            Director::Fourier {
                components: [
                    FourierSeries::constant(0.5),
                    FourierSeries::new(vec![0.0, 1.0], vec![]),
                    FourierSeries::new(vec![], vec![1.0]),
                ],
            },
            Moment::Zero,
        );
        assert!(matches!(
            sample_curve(&bad, 32),
            Err(FrenetError::NonTimelikeDirector { node: 0, .. })
        ));
    }

    fn sin_samples(n: usize) -> Vec<f64> {
        (0..n).map(|i| (TAU * i as f64 / n as f64).sin()).collect()
    }

    fn max_err(n: usize) -> f64 {
        let d = diff_periodic(&sin_samples(n), TAU, DerivOrder::First);
        d.iter()
            .enumerate()
            .map(|(i, v)| (v - (TAU * i as f64 / n as f64).cos()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn derivative_of_sine() {
        // symbol of the stencil on e^{it}: (8 sin h − sin 2h)/(6h) ≈ 1 − h⁴/30
        let n = 256;
        let h = TAU / n as f64;
        let gain = (8.0 * h.sin() - (2.0 * h).sin()) / (6.0 * h);
        let expected = 1.0 - gain;
        assert!((expected - h.powi(4) / 30.0).abs() < 1e-12);
        let err = max_err(n);
        assert!((err - expected).abs() < 1e-13, "err {err} vs {expected}");
        assert!(err < 1.3e-8);
    }

    #[test]
    fn derivative_convergence_order() {
        let ratio = max_err(256) / max_err(512);
        assert!((ratio - 16.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let c = vec![RealVec3::new(1.0, 2.0, 3.0); 32];
        for d in diff_periodic(&c, 3.0, DerivOrder::First) {
            assert!(d.max_abs() < 1e-12);
        }
        for d in diff_periodic(&c, 3.0, DerivOrder::Second) {
            assert!(d.max_abs() < 1e-9);
        }
    }

    #[test]
    fn second_derivative_of_sine() {
        let n = 512;
        let d = diff_periodic(&sin_samples(n), TAU, DerivOrder::Second);
        for (i, v) in d.iter().enumerate() {
            let t = TAU * i as f64 / n as f64;
            assert!((v + t.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn hyperboloid_circle_curvatures() {
        let spec = CurveSpec::hyperboloid_circle(circle_a(), Moment::Zero);
        let frame = frenet(&sample_curve(&spec, 1024).unwrap()).unwrap();
        for i in 0..frame.len() {
            assert!((frame.kappa[i].real - 0.75).abs() < 1e-8);
            assert!((frame.tau[i].real + 1.25).abs() < 1e-8);
            assert_eq!(frame.kappa[i].dual, 0.0);
            assert_eq!(frame.tau[i].dual, 0.0);
        }
        // u₃ = (−0.75, −1.25 cos t, −1.25 sin t)
        let t = frame.period * 100.0 / 1024.0;
        let u3 = RealVec3::new(-0.75, -1.25 * t.cos(), -1.25 * t.sin());
        assert!((frame.u3[100].real - u3).max_abs() < 1e-12);
    }

    #[test]
    fn frame_is_orthonormal() {
        let spec = ellipse_spec();
        let frame = frenet(&sample_curve(&spec, 256).unwrap()).unwrap();
        for i in 0..frame.len() {
            let (a, b, c) = (frame.u1[i], frame.u2[i], frame.u3[i]);
            assert!((a.dot(a) - DualScalar::new(-1.0, 0.0)).max_abs() < 1e-12);
            assert!((b.dot(b) - DualScalar::ONE).max_abs() < 1e-12);
            assert!((c.dot(c) - DualScalar::ONE).max_abs() < 1e-12);
            assert!(a.dot(b).max_abs() < 1e-12);
            assert!(a.dot(c).max_abs() < 1e-12);
            assert!(b.dot(c).max_abs() < 1e-12);
            assert!(frame.kappa[i].real > 0.0);
        }
    }

    fn ellipse_spec() -> CurveSpec {
        CurveSpec::new(
            TAU,
            Director::Fourier {
                components: [
                    FourierSeries::constant(2.0),
                    FourierSeries::new(vec![0.0, 0.8], vec![]),
                    FourierSeries::new(vec![], vec![0.5]),
                ],
            },
            Moment::BaseCurve {
                components: [
                    FourierSeries::new(vec![0.1, 0.2], vec![]),
                    FourierSeries::new(vec![0.0], vec![0.0, 0.3]),
                    FourierSeries::new(vec![0.4, 0.0, 0.1], vec![0.2]),
                ],
            },
        )
    }

    #[test]
    fn frenet_equations_hold() {
        let frame = frenet(&sample_curve(&ellipse_spec(), 1024).unwrap()).unwrap();
        let p = frame.period;
        let d1 = diff_periodic(&frame.u1, p, DerivOrder::First);
        let d2 = diff_periodic(&frame.u2, p, DerivOrder::First);
        let d3 = diff_periodic(&frame.u3, p, DerivOrder::First);
        for i in 0..frame.len() {
            let (k, t) = (frame.kappa[i], frame.tau[i]);
            let r1 = d1[i] - frame.u2[i].scale(k);
            let r2 = d2[i] - (frame.u1[i].scale(k) - frame.u3[i].scale(t));
            let r3 = d3[i] - frame.u2[i].scale(t);
            assert!(r1.max_abs() < 1e-6 && r2.max_abs() < 1e-6 && r3.max_abs() < 1e-6);
        }
    }

    #[test]
    fn speed_and_projection_curvature_agree() {
        let frame = frenet(&sample_curve(&ellipse_spec(), 1024).unwrap()).unwrap();
        let d1 = diff_periodic(&frame.u1, frame.period, DerivOrder::First);
        for (d, k) in d1.iter().zip(&frame.kappa) {
            assert!((d.norm().unwrap() - *k).max_abs() < 1e-8);
        }
    }

    #[test]
    fn curvature_converges_at_fourth_order() {
        let spec = ellipse_spec();
        let frames: Vec<SampledFrame> = [256, 512, 2048]
            .iter()
            .map(|&n| frenet(&sample_curve(&spec, n).unwrap()).unwrap())
            .collect();
        let gap = |f: &SampledFrame, stride: usize| {
            (0..f.len())
                .map(|i| {
                    let j = i * stride;
                    (f.kappa[i] - frames[2].kappa[j])
                        .max_abs()
                        .max((f.tau[i] - frames[2].tau[j]).max_abs())
                })
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (gap(&frames[0], 8), gap(&frames[1], 4));
        assert!(fine < 1e-5);
        assert!(coarse / fine > 12.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn circle_pfaffian_is_timelike() {
        let spec = CurveSpec::hyperboloid_circle(circle_a(), Moment::Zero);
        let frame = frenet(&sample_curve(&spec, 1024).unwrap()).unwrap();
        let pf = pfaffian(&frame).unwrap();
        assert_eq!(pf.case, PfaffCase::Timelike);
        let w = (-0.6f64).atanh();
        assert!((w + std::f64::consts::LN_2).abs() < 1e-15);
        for (i, a) in pf.angle.iter().enumerate() {
            assert!((a.real - w).abs() < 1e-9);
            assert_eq!(a.dual, 0.0);
            let c = pf.axis[i];
            assert!((c.dot(c) - DualScalar::new(-1.0, 0.0)).max_abs() < 1e-12);
            let psi = frame.psi(i);
            let sq = psi.dot(psi);
            assert!((sq.real + 1.0).abs() < 1e-8);
        }
        assert!(pf.is_constant(1e-8));
    }

    #[test]
    fn zero_angle_axis_is_minus_third_vector() {
        let e1 = DualVec3::from_real(RealVec3::E1);
        let e3 = DualVec3::new(RealVec3::E3, RealVec3::E2);
        assert_eq!(axis_vector(PfaffCase::Spacelike, DualScalar::ZERO, e1, e3), -e3);
        assert_eq!(axis_vector(PfaffCase::Timelike, DualScalar::ZERO, e1, e3), e1);
    }

    #[test]
    fn pfaffian_case_errors() {
        let one = DualScalar::ONE;
        let e = vec![DualVec3::from_real(RealVec3::E1); 16];
        let f = vec![DualVec3::from_real(RealVec3::E3); 16];
        let k = vec![one; 16];
        let mut t = vec![DualScalar::from_real(0.5); 16];
        assert_eq!(
            pfaffian_axis(TAU, &k, &t, &e, &f).unwrap().case,
            PfaffCase::Spacelike
        );
        t[5] = DualScalar::from_real(2.0);
        assert!(matches!(
            pfaffian_axis(TAU, &k, &t, &e, &f),
            Err(FrenetError::MixedCase { node: 5 })
        ));
        t[5] = DualScalar::from_real(-1.0);
        assert!(matches!(
            pfaffian_axis(TAU, &k, &t, &e, &f),
            Err(FrenetError::NullPfaffian { node: 5 })
        ));
    }

    #[test]
    fn degenerate_director_has_no_frame() {
        let spec = CurveSpec::hyperboloid_circle(0.0, Moment::Zero);
        let curve = sample_curve(&spec, 32).unwrap();
        assert!(matches!(
            frenet(&curve),
            Err(FrenetError::DegenerateSpeed { node: 0 })
        ));
    }
}
