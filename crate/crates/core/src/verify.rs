//! Two-path verification: every closed-form relation is evaluated against an
//! independent computation (ambient contraction, periodic differentiation or
//! an alternative algebraic route) and the residuals are collected into a
//! report keyed by relation id.
//!
//! Failures are report entries, not errors. An entry whose hypothesis does
//! not hold on the given curve (wrong causal case, varying angle, singular
//! denominator) is reported as skipped with the reason.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualnum::DualScalar;
use crate::frenet::{
    axis_vector, diff_periodic, frenet, sample_curve, CurveSpec, DerivOrder, FrameAxis,
    FrenetError, PfaffCase, PfaffData, SampledFrame,
};
use crate::invariants::{
    axis_invariants_lenient, closed_integral, constant_angle, pfaff_angle_closed,
    pfaff_angle_from_frame, pfaff_drall_parts, pfaff_pitch_closed, pfaff_pitch_from_frame,
    printed_timelike_denominator, InvariantTriple, DRALL_TOLERANCE,
};
use crate::minkowski::{DualVec3, RealVec3};
use crate::parallel::{
    apply_matrix, cbar_angle_composed, cbar_composed, cbar_invariants, cbar_pitch_composed,
    corollary_expand, parallel_frame, transform_matrix, v1_drall_expanded, v1_pitch_expanded,
    v3_drall_expanded, v3_pitch_expanded, v_axis_invariants_lenient, ParallelAngle,
    ParallelError, ParallelFrame, StarFactor,
};

/// Tolerance for entries that hold exactly in dual arithmetic at `Φ = 0`.
pub const REDUCTION_TOLERANCE: f64 = 1e-12;
/// Tolerance for formal zero-angle entries and `Ψ = −Ψ̄`.
pub const DEGENERATE_TOLERANCE: f64 = 1e-10;
/// Drall comparisons ignore nodes whose definitional denominator is below
/// this fraction of its largest magnitude.
pub const DRALL_NODE_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs: 1e-8,
            rel: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Parallel(#[from] ParallelError),
}

/// Min/max/mean of a per-node quantity. Vector-valued relations are
/// summarized by the largest component magnitude at each node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSummary {
    pub nodes: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl SeriesSummary {
    pub fn of(values: &[f64]) -> Self {
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        SeriesSummary {
            nodes: values.len(),
            min,
            max,
            mean: sum / values.len().max(1) as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationValue {
    Dual(DualScalar),
    Series(SeriesSummary),
    Real(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// An alternative reading of a relation, reported next to the primary one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_residual: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<RelationValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<RelationValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_residual: Option<f64>,
    /// Absolute-only tolerance replacing the report tolerances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tolerance: Option<f64>,
    /// True when one side depends on periodic differentiation.
    pub discretized: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
}

impl RelationEntry {
    fn skipped(id: &str, reason: String) -> Self {
        RelationEntry {
            id: id.to_string(),
            status: Status::Skipped,
            reason: Some(reason),
            lhs: None,
            rhs: None,
            abs_residual: None,
            rel_residual: None,
            abs_tolerance: None,
            discretized: false,
            note: String::new(),
            variants: Vec::new(),
        }
    }

    fn discretized(&mut self) -> &mut Self {
        self.discretized = true;
        self
    }

    fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.note = note.into();
        self
    }

    fn tolerance(&mut self, abs: f64) -> &mut Self {
        self.abs_tolerance = Some(abs);
        self
    }

    fn variant(&mut self, name: &str, c: &Comparison) -> &mut Self {
        let finite = c.abs.is_finite() && c.rel.is_finite();
        self.variants.push(Variant {
            name: name.to_string(),
            abs_residual: finite.then_some(c.abs),
            rel_residual: finite.then_some(c.rel),
            pass: false,
        });
        self
    }

    fn passes(&self, abs: f64, rel: f64, tol: Tolerances) -> bool {
        match self.abs_tolerance {
            Some(t) => abs <= t,
            None => abs <= tol.abs || rel <= tol.rel,
        }
    }

    fn finalize(&mut self, tol: Tolerances) {
        if self.status == Status::Skipped {
            return;
        }
        let finite_value = |v: &Option<RelationValue>| match v {
            Some(RelationValue::Dual(d)) => d.is_finite(),
            Some(RelationValue::Real(r)) => r.is_finite(),
            Some(RelationValue::Series(s)) => {
                s.min.is_finite() && s.max.is_finite() && s.mean.is_finite()
            }
            None => true,
        };
        // JSON has no non-finite numbers; such values are dropped and the
        // entry fails explicitly
        for side in [&mut self.lhs, &mut self.rhs] {
            if !finite_value(side) {
                *side = None;
            }
        }
        self.status = match (self.abs_residual, self.rel_residual) {
            (Some(abs), Some(rel)) if abs.is_finite() && rel.is_finite() => {
                if self.passes(abs, rel, tol) {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
            _ => {
                self.abs_residual = None;
                self.rel_residual = None;
                self.reason = Some("non-finite residual".to_string());
                Status::Fail
            }
        };
        for i in 0..self.variants.len() {
            let v = &self.variants[i];
            let pass = match (v.abs_residual, v.rel_residual) {
                (Some(a), Some(r)) => self.passes(a, r, tol),
                _ => false,
            };
            self.variants[i].pass = pass;
        }
    }
}

/// Residual report, ordered by relation id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationReport {
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn get(&self, id: &str) -> Option<&RelationEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

/// One evaluated pair of sides.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Comparison {
    lhs: RelationValue,
    rhs: RelationValue,
    abs: f64,
    rel: f64,
}

fn relative(abs: f64, scale: f64) -> f64 {
    if abs == 0.0 {
        0.0
    } else {
        (abs / scale.max(f64::MIN_POSITIVE)).min(f64::MAX)
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

impl Comparison {
    fn dual(lhs: DualScalar, rhs: DualScalar) -> Self {
        let abs = (lhs - rhs).max_abs();
        Comparison {
            lhs: RelationValue::Dual(lhs.canonical_zero()),
            rhs: RelationValue::Dual(rhs.canonical_zero()),
            abs,
            rel: relative(abs, lhs.max_abs().max(rhs.max_abs())),
        }
    }

    fn real(lhs: f64, rhs: f64) -> Self {
        let abs = (lhs - rhs).abs();
        Comparison {
            lhs: RelationValue::Real(lhs + 0.0),
            rhs: RelationValue::Real(rhs + 0.0),
            abs,
            rel: relative(abs, lhs.abs().max(rhs.abs())),
        }
    }

    fn series(lhs: &[f64], rhs: &[f64]) -> Self {
        debug_assert_eq!(lhs.len(), rhs.len());
        let abs = max_of(lhs.iter().zip(rhs).map(|(a, b)| (a - b).abs()));
        let scale = max_of(lhs.iter().chain(rhs).map(|v| v.abs()));
        Comparison {
            lhs: RelationValue::Series(SeriesSummary::of(lhs)),
            rhs: RelationValue::Series(SeriesSummary::of(rhs)),
            abs,
            rel: relative(abs, scale),
        }
    }

    fn series_const(lhs: &[f64], rhs: f64) -> Self {
        let mut c = Comparison::series(lhs, &vec![rhs; lhs.len()]);
        c.rhs = RelationValue::Real(rhs + 0.0);
        c
    }

    fn duals(lhs: &[DualScalar], rhs: &[DualScalar]) -> Self {
        debug_assert_eq!(lhs.len(), rhs.len());
        let abs = max_of(lhs.iter().zip(rhs).map(|(a, b)| (*a - *b).max_abs()));
        let mags = |v: &[DualScalar]| v.iter().map(|x| x.max_abs()).collect::<Vec<_>>();
        let (l, r) = (mags(lhs), mags(rhs));
        let scale = max_of(l.iter().chain(&r).copied());
        Comparison {
            lhs: RelationValue::Series(SeriesSummary::of(&l)),
            rhs: RelationValue::Series(SeriesSummary::of(&r)),
            abs,
            rel: relative(abs, scale),
        }
    }

    fn duals_const(lhs: &[DualScalar], rhs: DualScalar) -> Self {
        let mut c = Comparison::duals(lhs, &vec![rhs; lhs.len()]);
        c.rhs = RelationValue::Dual(rhs.canonical_zero());
        c
    }

    fn vectors(lhs: &[DualVec3], rhs: &[DualVec3]) -> Self {
        debug_assert_eq!(lhs.len(), rhs.len());
        let abs = max_of(lhs.iter().zip(rhs).map(|(a, b)| (*a - *b).max_abs()));
        let mags = |v: &[DualVec3]| v.iter().map(|x| x.max_abs()).collect::<Vec<_>>();
        let (l, r) = (mags(lhs), mags(rhs));
        let scale = max_of(l.iter().chain(&r).copied());
        Comparison {
            lhs: RelationValue::Series(SeriesSummary::of(&l)),
            rhs: RelationValue::Series(SeriesSummary::of(&r)),
            abs,
            rel: relative(abs, scale),
        }
    }
}

struct Builder {
    entries: Vec<RelationEntry>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            entries: Vec::new(),
        }
    }

    fn add(&mut self, id: &str, c: Comparison) -> &mut RelationEntry {
        self.entries.push(RelationEntry {
            id: id.to_string(),
            status: Status::Fail,
            reason: None,
            lhs: Some(c.lhs),
            rhs: Some(c.rhs),
            abs_residual: Some(c.abs),
            rel_residual: Some(c.rel),
            abs_tolerance: None,
            discretized: false,
            note: String::new(),
            variants: Vec::new(),
        });
        self.entries.last_mut().expect("just pushed")
    }

    fn skip(&mut self, id: &str, reason: impl Into<String>) {
        self.entries
            .push(RelationEntry::skipped(id, format!("hypothesis: {}", reason.into())));
    }

    fn finish(mut self, tol: Tolerances) -> RelationReport {
        for e in &mut self.entries {
            e.finalize(tol);
        }
        // stable: entries sharing a numeric id keep insertion order
        self.entries.sort_by(|a, b| id_order(&a.id, &b.id));
        RelationReport {
            tol_abs: tol.abs,
            tol_rel: tol.rel,
            entries: self.entries,
        }
    }
}

/// Numeric ids (`"2.54-vs-2.52"`) by their numeric prefix, then named ids.
fn id_order(a: &str, b: &str) -> Ordering {
    fn key(id: &str) -> Option<(u32, u32)> {
        let head = id.split('-').next()?;
        let (major, minor) = head.split_once('.')?;
        Some((major.parse().ok()?, minor.parse().ok()?))
    }
    match (key(a), key(b)) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

fn split_parts(v: &[DualVec3]) -> (Vec<RealVec3>, Vec<RealVec3>) {
    (
        v.iter().map(|x| x.real).collect(),
        v.iter().map(|x| x.dual).collect(),
    )
}

fn d1<T>(v: &[T], period: f64) -> Vec<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    diff_periodic(v, period, DerivOrder::First)
}

/// Per node `(⟨x′, x*′⟩, ⟨x′, x′⟩)` from differences of the split parts.
fn definitional_drall(v: &[DualVec3], period: f64) -> Vec<(f64, f64)> {
    let (re, du) = split_parts(v);
    let (dre, ddu) = (d1(&re, period), d1(&du, period));
    dre.iter()
        .zip(&ddu)
        .map(|(a, b)| (a.dot(*b), a.dot(*a)))
        .collect()
}

fn rv(real: RealVec3, dual: RealVec3) -> DualVec3 {
    DualVec3::new(real, dual)
}

/// Nodes where both the formula and the definitional ratio are defined and
/// the definitional denominator is not negligible.
fn drall_nodes(formula: &[Option<f64>], def: &[(f64, f64)]) -> (Vec<f64>, Vec<f64>) {
    let peak = max_of(def.iter().map(|(_, d)| d.abs()));
    let floor = (DRALL_NODE_FRACTION * peak).max(DRALL_TOLERANCE);
    formula
        .iter()
        .zip(def)
        .filter_map(|(f, (num, den))| match f {
            Some(v) if den.abs() > floor => Some((*v, num / den)),
            _ => None,
        })
        .unzip()
}

/// Everything the relation groups share.
struct Context<'a> {
    f: &'a SampledFrame,
    pf: &'a ParallelFrame,
    phi: DualScalar,
    period: f64,
    u: [InvariantTriple; 3],
    v: [InvariantTriple; 3],
    int_k: DualScalar,
    int_t: DualScalar,
    int_p: DualScalar,
    int_q: DualScalar,
    /// `D(t) = U₁∮τ − U₃∮κ` as an ambient dual vector per node.
    d_u: Vec<DualVec3>,
    /// `D(t) = −V₁∮Q + V₃∮P`.
    d_v: Vec<DualVec3>,
    c: Result<PfaffData, String>,
    bar: Result<PfaffData, String>,
}

const AXES: [FrameAxis; 3] = [FrameAxis::First, FrameAxis::Second, FrameAxis::Third];

impl<'a> Context<'a> {
    fn new(f: &'a SampledFrame, pf: &'a ParallelFrame) -> Self {
        let period = f.period;
        let int_k = closed_integral(&f.kappa, period);
        let int_t = closed_integral(&f.tau, period);
        let int_p = closed_integral(&pf.p, period);
        let int_q = closed_integral(&pf.q, period);
        let d_u = (0..f.len())
            .map(|i| f.u1[i].scale(int_t) - f.u3[i].scale(int_k))
            .collect();
        let d_v = (0..f.len())
            .map(|i| pf.v3[i].scale(int_p) - pf.v1[i].scale(int_q))
            .collect();
        Context {
            f,
            pf,
            phi: pf.phi,
            period,
            u: AXES.map(|a| axis_invariants_lenient(f, a)),
            v: AXES.map(|a| v_axis_invariants_lenient(pf, a)),
            int_k,
            int_t,
            int_p,
            int_q,
            d_u,
            d_v,
            c: crate::frenet::pfaffian(f).map_err(|e| e.to_string()),
            bar: pf.pfaffian_bar().map_err(|e| e.to_string()),
        }
    }

    fn n(&self) -> usize {
        self.f.len()
    }

    /// `⟨D(t), X(t)⟩` per node.
    fn contract(&self, x: &[DualVec3]) -> Vec<DualScalar> {
        self.d_u.iter().zip(x).map(|(d, x)| d.dot(*x)).collect()
    }

    fn pitch_ambient(&self, x: &[DualVec3]) -> Vec<f64> {
        self.contract(x).iter().map(|s| s.dual).collect()
    }

    fn angle_ambient(&self, x: &[DualVec3]) -> Vec<DualScalar> {
        self.contract(x).iter().map(|s| -*s).collect()
    }
}

/// Frame relations, Frenet equations and their split, and the Darboux
/// form of the rotation vector.
fn frenet_relations(b: &mut Builder, f: &SampledFrame) {
    let n = f.len();
    let p = f.period;
    let (u1, u2, u3) = (&f.u1, &f.u2, &f.u3);

    let wedges: Vec<DualVec3> = (0..n)
        .flat_map(|i| [u1[i].cross(u2[i]), u2[i].cross(u3[i]), u3[i].cross(u1[i])])
        .collect();
    let adopted: Vec<DualVec3> = (0..n).flat_map(|i| [u3[i], -u1[i], u2[i]]).collect();
    let printed: Vec<DualVec3> = (0..n).flat_map(|i| [-u3[i], u1[i], -u2[i]]).collect();
    b.add("2.1", Comparison::vectors(&wedges, &adopted))
        .variant("adopted", &Comparison::vectors(&wedges, &adopted))
        .variant("printed", &Comparison::vectors(&wedges, &printed))
        .note(
            "U1∧U2 = U3, U2∧U3 = −U1, U3∧U1 = U2 under the adopted cross product; \
             the printed relations are the negation of all three",
        );

    let gram: Vec<DualScalar> = (0..n)
        .flat_map(|i| {
            [
                u1[i].dot(u1[i]),
                u2[i].dot(u2[i]),
                u3[i].dot(u3[i]),
                u1[i].dot(u2[i]),
                u1[i].dot(u3[i]),
                u2[i].dot(u3[i]),
            ]
        })
        .collect();
    let eta: Vec<DualScalar> = (0..n)
        .flat_map(|_| [-1.0, 1.0, 1.0, 0.0, 0.0, 0.0].map(DualScalar::from_real))
        .collect();
    b.add("2.1-orthonormality", Comparison::duals(&gram, &eta))
        .note("Gram matrix of the frame against diag(−1, 1, 1)");

    let (du1, du2, du3) = (d1(u1, p), d1(u2, p), d1(u3, p));
    let (k, t) = (&f.kappa, &f.tau);
    let r1: Vec<DualVec3> = (0..n).map(|i| u2[i].scale(k[i])).collect();
    let r2: Vec<DualVec3> = (0..n)
        .map(|i| u1[i].scale(k[i]) - u3[i].scale(t[i]))
        .collect();
    let r3: Vec<DualVec3> = (0..n).map(|i| u2[i].scale(t[i])).collect();
    b.add("2.2-1", Comparison::vectors(&du1, &r1)).discretized();
    b.add("2.2-2", Comparison::vectors(&du2, &r2)).discretized();
    b.add("2.2-3", Comparison::vectors(&du3, &r3)).discretized();
    let norms: Vec<DualScalar> = du1
        .iter()
        .map(|d| d.norm().unwrap_or(DualScalar::new(f64::NAN, f64::NAN)))
        .collect();
    b.add("2.2-kappa-norm", Comparison::duals(k, &norms))
        .discretized()
        .note("κ = ⟨U1′,U2⟩ against κ = ∥U1′∥");

    let (r_1, s_1) = split_parts(u1);
    let (r_2, s_2) = split_parts(u2);
    let (r_3, s_3) = split_parts(u3);
    let (dr1, ds1) = (d1(&r_1, p), d1(&s_1, p));
    let (dr2, ds2) = (d1(&r_2, p), d1(&s_2, p));
    let (dr3, ds3) = (d1(&r_3, p), d1(&s_3, p));
    let real = |v: &[RealVec3]| v.iter().map(|x| DualVec3::from_real(*x)).collect::<Vec<_>>();
    let k1 = |i: usize| k[i].real;
    let k1s = |i: usize| k[i].dual;
    let k2 = |i: usize| t[i].real;
    let k2s = |i: usize| t[i].dual;
    let split: [(&str, Vec<RealVec3>, Vec<RealVec3>); 6] = [
        ("2.3-1", dr1.clone(), (0..n).map(|i| r_2[i] * k1(i)).collect()),
        (
            "2.3-2",
            dr2.clone(),
            (0..n).map(|i| r_1[i] * k1(i) - r_3[i] * k2(i)).collect(),
        ),
        ("2.3-3", dr3.clone(), (0..n).map(|i| r_2[i] * k2(i)).collect()),
        (
            "2.3-4",
            ds1,
            (0..n).map(|i| r_2[i] * k1s(i) + s_2[i] * k1(i)).collect(),
        ),
        (
            "2.3-5",
            ds2,
            (0..n)
                .map(|i| {
                    r_1[i] * k1s(i) - r_3[i] * k2s(i) + s_1[i] * k1(i) - s_3[i] * k2(i)
                })
                .collect(),
        ),
        (
            "2.3-6",
            ds3,
            (0..n).map(|i| r_2[i] * k2s(i) + s_2[i] * k2(i)).collect(),
        ),
    ];
    for (id, lhs, rhs) in split {
        b.add(id, Comparison::vectors(&real(&lhs), &real(&rhs)))
            .discretized();
    }

    let psi: Vec<DualVec3> = (0..n).map(|i| f.psi(i)).collect();
    let darboux_l: Vec<DualVec3> = (0..n).flat_map(|i| [du1[i], du2[i], du3[i]]).collect();
    let darboux_r: Vec<DualVec3> = (0..n)
        .flat_map(|i| [u1[i].cross(psi[i]), u2[i].cross(psi[i]), u3[i].cross(psi[i])])
        .collect();
    b.add("2.4", Comparison::vectors(&darboux_l, &darboux_r))
        .discretized()
        .note("U_i′ = U_i ∧ Ψ with Ψ = τU1 − κU3");
}

/// Frame-vector drall entry; singular formula nodes make it a skip.
fn frame_drall(b: &mut Builder, id: &str, formula: &InvariantTriple, axis: &[DualVec3], period: f64) {
    if let Some(node) = formula.drall.samples.iter().position(Option::is_none) {
        b.skip(id, format!("drall denominator vanishes at node {node}"));
        return;
    }
    let def = definitional_drall(axis, period);
    let (l, r) = drall_nodes(&formula.drall.samples, &def);
    if l.is_empty() {
        b.skip(id, "definitional drall denominator vanishes at every node");
        return;
    }
    let skipped = axis.len() - l.len();
    let e = b.add(id, Comparison::series(&l, &r));
    e.discretized();
    if skipped > 0 {
        e.note(format!("{skipped} near-singular nodes excluded"));
    }
}

fn u_invariant_relations(b: &mut Builder, ctx: &Context) {
    let f = ctx.f;
    let n = ctx.n();
    b.add("2.6-vs-2.50", Comparison::vectors(&ctx.d_u, &ctx.d_v))
        .note("Steiner vector from the U-frame against the V-frame form");

    let (ik, it) = (ctx.int_k, ctx.int_t);
    let split: Vec<DualVec3> = (0..n)
        .map(|i| {
            let (u1, u3) = (f.u1[i], f.u3[i]);
            rv(
                u1.real * it.real - u3.real * ik.real,
                u1.dual * it.real + u1.real * it.dual - u3.dual * ik.real - u3.real * ik.dual,
            )
        })
        .collect();
    b.add("2.7", Comparison::vectors(&split, &ctx.d_u));

    let [u1, u2, u3] = &ctx.u;
    b.add(
        "2.8",
        Comparison::series_const(&ctx.pitch_ambient(&f.u1), u1.pitch_closed),
    )
    .note("⟨d,u1*⟩ + ⟨d*,u1⟩ per node against −∮k2*");
    b.add("2.9", Comparison::duals_const(&ctx.angle_ambient(&f.u1), it));
    b.add(
        "2.10",
        Comparison::dual(
            DualScalar::new(u1.lambda, u1.pitch),
            DualScalar::new(it.real, u1.pitch_closed),
        ),
    )
    .note("(λ, −Λ.dual) against (∮k2, −∮k2*)");
    frame_drall(b, "2.11", u1, &f.u1, ctx.period);

    b.add("2.12", Comparison::series_const(&ctx.pitch_ambient(&f.u2), 0.0));
    b.add(
        "2.13",
        Comparison::duals_const(&ctx.angle_ambient(&f.u2), DualScalar::ZERO),
    );
    frame_drall(b, "2.14", u2, &f.u2, ctx.period);

    b.add(
        "2.15",
        Comparison::series_const(&ctx.pitch_ambient(&f.u3), u3.pitch_closed),
    )
    .note("⟨d,u3*⟩ + ⟨d*,u3⟩ per node against −∮k1*");
    b.add("2.16", Comparison::duals_const(&ctx.angle_ambient(&f.u3), ik));
    b.add(
        "2.17",
        Comparison::dual(
            DualScalar::new(u3.lambda, u3.pitch),
            DualScalar::new(ik.real, u3.pitch_closed),
        ),
    )
    .note("(λ, −Λ.dual) against (∮k1, −∮k1*)");
    frame_drall(b, "2.18", u3, &f.u3, ctx.period);
}

/// Ids of one causal case of a Pfaffian axis.
struct CaseIds {
    unit: &'static str,
    split: &'static str,
    pitch: &'static str,
    pitch_frame: &'static str,
    angle: &'static str,
    angle_frame: &'static str,
    denominator: &'static str,
    drall: &'static str,
}

/// A Pfaffian axis (`C` on the `U`-frame or `C̄` on the `V`-frame).
struct AxisFamily<'a> {
    spacelike: CaseIds,
    timelike: CaseIds,
    zero: &'static str,
    e1: &'a [DualVec3],
    e3: &'a [DualVec3],
    a: &'a [DualScalar],
    b: &'a [DualScalar],
    int_a: DualScalar,
    int_b: DualScalar,
    /// `+1` for `C`; `−1` for `C̄`, whose frame carries `D` as minus the
    /// integrated rotation vector.
    sign: f64,
    first: &'a InvariantTriple,
    third: &'a InvariantTriple,
    rotation: Vec<DualVec3>,
    data: &'a Result<PfaffData, String>,
    angle_name: &'static str,
}

impl CaseIds {
    fn all(&self) -> [&'static str; 8] {
        [
            self.unit,
            self.split,
            self.pitch,
            self.pitch_frame,
            self.angle,
            self.angle_frame,
            self.denominator,
            self.drall,
        ]
    }
}

fn other(case: PfaffCase) -> PfaffCase {
    match case {
        PfaffCase::Spacelike => PfaffCase::Timelike,
        PfaffCase::Timelike => PfaffCase::Spacelike,
    }
}

fn case_name(case: PfaffCase) -> &'static str {
    match case {
        PfaffCase::Spacelike => "spacelike",
        PfaffCase::Timelike => "timelike",
    }
}

fn pfaff_family_relations(b: &mut Builder, ctx: &Context, fam: &AxisFamily) {
    let pd = match fam.data {
        Ok(pd) => pd,
        Err(reason) => {
            for id in fam.spacelike.all().into_iter().chain(fam.timelike.all()) {
                b.skip(id, reason.clone());
            }
            b.skip(fam.zero, reason.clone());
            return;
        }
    };
    let n = ctx.n();
    let case = pd.case;
    let (ids, off) = match case {
        PfaffCase::Spacelike => (&fam.spacelike, &fam.timelike),
        PfaffCase::Timelike => (&fam.timelike, &fam.spacelike),
    };
    let wrong = format!("rotation vector is {}", case_name(case));
    for id in [
        off.unit,
        off.split,
        off.pitch,
        off.pitch_frame,
        off.angle,
        off.angle_frame,
    ] {
        b.skip(id, wrong.clone());
    }

    // unit axis against the normalized rotation vector, with the norm
    // carrying the sign that makes curvature = ∥Ψ∥·cosh (or torsion = ∥Ψ∥·cosh)
    let normalized: Vec<DualVec3> = (0..n)
        .map(|i| {
            let r = fam.rotation[i];
            let lead = match case {
                PfaffCase::Spacelike => fam.a[i].real,
                PfaffCase::Timelike => fam.b[i].real,
            };
            match r.norm() {
                Ok(m) => {
                    let m = if lead < 0.0 { -m } else { m };
                    m.recip().map(|s| r.scale(s)).unwrap_or(DualVec3::ZERO)
                }
                Err(_) => DualVec3::ZERO,
            }
        })
        .collect();
    b.add(ids.unit, Comparison::vectors(&pd.axis, &normalized))
        .note("axis from the hyperbolic angle against the normalized rotation vector");

    let split: Vec<DualVec3> = (0..n)
        .map(|i| {
            let (w, ws) = (pd.angle[i].real, pd.angle[i].dual);
            let (c, s) = (w.cosh(), w.sinh());
            let (e1, e3) = (fam.e1[i], fam.e3[i]);
            match case {
                PfaffCase::Spacelike => rv(
                    e1.real * s - e3.real * c,
                    e1.dual * s - e3.dual * c + e1.real * (ws * c) - e3.real * (ws * s),
                ),
                PfaffCase::Timelike => rv(
                    e1.real * c - e3.real * s,
                    e1.dual * c - e3.dual * s + e1.real * (ws * s) - e3.real * (ws * c),
                ),
            }
        })
        .collect();
    b.add(ids.split, Comparison::vectors(&split, &pd.axis));

    match constant_angle(pd) {
        Ok(angle) => {
            let pitch = fam.sign * pfaff_pitch_closed(case, angle, fam.int_a, fam.int_b);
            let lambda = pfaff_angle_closed(case, angle, fam.int_a, fam.int_b) * fam.sign;
            b.add(
                ids.pitch,
                Comparison::series_const(&ctx.pitch_ambient(&pd.axis), pitch),
            )
            .note("closed form against ⟨d,c*⟩ + ⟨d*,c⟩ per node");
            let pitch_frame = pfaff_pitch_from_frame(case, angle, fam.first, fam.third);
            b.add(ids.pitch_frame, Comparison::real(pitch_frame, pitch));
            b.add(
                ids.angle,
                Comparison::duals_const(&ctx.angle_ambient(&pd.axis), lambda),
            )
            .note("closed form against −⟨D,C⟩ per node");
            let angle_frame =
                pfaff_angle_from_frame(case, angle, fam.first.angle, fam.third.angle);
            b.add(ids.angle_frame, Comparison::dual(angle_frame, lambda));
        }
        Err(e) => {
            let why = format!("{} varies along the curve ({e})", fam.angle_name);
            for id in [ids.pitch, ids.pitch_frame, ids.angle, ids.angle_frame] {
                b.skip(id, why.clone());
            }
        }
    }

    // zero angle, spacelike form: axis −E3, angle of pitch −Λ_E3
    let zero_closed =
        pfaff_angle_closed(PfaffCase::Spacelike, DualScalar::ZERO, fam.int_a, fam.int_b)
            * fam.sign;
    let zero_frame = pfaff_angle_from_frame(
        PfaffCase::Spacelike,
        DualScalar::ZERO,
        fam.first.angle,
        fam.third.angle,
    );
    b.add(fam.zero, Comparison::dual(zero_closed, zero_frame))
        .tolerance(DEGENERATE_TOLERANCE)
        .note(format!(
            "formal evaluation at {} = 0 in the spacelike form",
            fam.angle_name
        ));

    // drall identities hold for any angle function, so both case forms are
    // audited on the actual angle using the matching formal axis
    for form in [case, other(case)] {
        let form_ids = match form {
            PfaffCase::Spacelike => &fam.spacelike,
            PfaffCase::Timelike => &fam.timelike,
        };
        drall_audit(b, ctx, fam, pd, form, form_ids, form != case);
    }
}

fn drall_audit(
    b: &mut Builder,
    ctx: &Context,
    fam: &AxisFamily,
    pd: &PfaffData,
    form: PfaffCase,
    ids: &CaseIds,
    formal: bool,
) {
    let n = ctx.n();
    let axis: Vec<DualVec3> = (0..n)
        .map(|i| axis_vector(form, pd.angle[i], fam.e1[i], fam.e3[i]))
        .collect();
    let def = definitional_drall(&axis, ctx.period);
    let parts: Vec<_> = (0..n)
        .map(|i| pfaff_drall_parts(form, fam.a[i], fam.b[i], pd.angle[i], pd.angle_rate[i]))
        .collect();
    let def_den: Vec<f64> = def.iter().map(|(_, d)| *d).collect();
    let implemented: Vec<f64> = parts.iter().map(|p| p.denominator).collect();
    let rate_sq = |i: usize| pd.angle_rate[i].real.powi(2);
    let flipped: Vec<f64> = (0..n)
        .map(|i| match form {
            PfaffCase::Spacelike => implemented[i] + 2.0 * rate_sq(i),
            PfaffCase::Timelike => implemented[i] - 2.0 * rate_sq(i),
        })
        .collect();
    let printed_timelike_c = fam.sign > 0.0 && form == PfaffCase::Timelike;
    let printed: Vec<f64> = if printed_timelike_c {
        (0..n)
            .map(|i| printed_timelike_denominator(fam.a[i], fam.b[i], pd.angle[i], pd.angle_rate[i]))
            .collect()
    } else {
        implemented.clone()
    };

    let main = Comparison::series(&implemented, &def_den);
    let e = b.add(ids.denominator, main);
    e.discretized()
        .variant("printed", &Comparison::series(&printed, &def_den));
    if printed_timelike_c {
        e.variant("corrected", &main).note(format!(
            "printed (k1 sinhω − k2 coshω)² − ω′² against ⟨dc,dc⟩; \
             implemented (k1 coshω − k2 sinhω)² + ω′²{}",
            if formal { "; formal axis on the actual angle" } else { "" }
        ));
    } else {
        e.variant("rate-sign-flipped", &Comparison::series(&flipped, &def_den))
            .note(format!(
                "printed form against ⟨dc,dc⟩{}",
                if formal { "; formal axis on the actual angle" } else { "" }
            ));
    }

    let formula: Vec<Option<f64>> = parts.iter().map(|p| p.ratio()).collect();
    let (l, r) = drall_nodes(&formula, &def);
    if l.is_empty() {
        b.skip(ids.drall, "axis is stationary; drall undefined at every node");
        return;
    }
    let excluded = n - l.len();
    let e = b.add(ids.drall, Comparison::series(&l, &r));
    e.discretized();
    if printed_timelike_c {
        let printed_ratio: Vec<Option<f64>> = parts
            .iter()
            .zip(&printed)
            .map(|(p, den)| (den.abs() > DRALL_TOLERANCE).then(|| p.numerator / den))
            .collect();
        let (pl, pr) = drall_nodes(&printed_ratio, &def);
        if !pl.is_empty() {
            e.variant("printed", &Comparison::series(&pl, &pr));
        }
        e.variant("corrected", &Comparison::series(&l, &r));
    }
    let mut note = String::from("formula against ⟨dc,dc*⟩/⟨dc,dc⟩");
    if formal {
        note.push_str("; formal axis on the actual angle");
    }
    if excluded > 0 {
        note.push_str(&format!("; {excluded} near-singular nodes excluded"));
    }
    e.note(note);
}

fn c_relations(b: &mut Builder, ctx: &Context) {
    let f = ctx.f;
    let fam = AxisFamily {
        spacelike: CaseIds {
            unit: "2.19",
            split: "2.20",
            pitch: "2.21",
            pitch_frame: "2.22",
            angle: "2.23",
            angle_frame: "2.24",
            denominator: "2.25-denominator",
            drall: "2.25",
        },
        timelike: CaseIds {
            unit: "2.26",
            split: "2.27",
            pitch: "2.28",
            pitch_frame: "2.29",
            angle: "2.30",
            angle_frame: "2.31",
            denominator: "2.32-denominator",
            drall: "2.32",
        },
        zero: "2.24-omega-zero",
        e1: &f.u1,
        e3: &f.u3,
        a: &f.kappa,
        b: &f.tau,
        int_a: ctx.int_k,
        int_b: ctx.int_t,
        sign: 1.0,
        first: &ctx.u[0],
        third: &ctx.u[2],
        rotation: (0..ctx.n()).map(|i| f.psi(i)).collect(),
        data: &ctx.c,
        angle_name: "Ω",
    };
    pfaff_family_relations(b, ctx, &fam);
}

fn v_frame_relations(b: &mut Builder, ctx: &Context) {
    let (f, pf) = (ctx.f, ctx.pf);
    let n = ctx.n();
    let p = ctx.period;
    let phi = ctx.phi;
    let (ch, sh) = (phi.cosh(), phi.sinh());

    let fixed: Vec<DualScalar> = (0..n)
        .flat_map(|i| [pf.v1[i].dot(pf.v1[i]), pf.v1[i].dot(f.u1[i])])
        .collect();
    let fixed_ref: Vec<DualScalar> = (0..n)
        .flat_map(|_| [DualScalar::from_real(-1.0), -ch])
        .collect();
    b.add("2.33", Comparison::duals(&fixed, &fixed_ref))
        .note("⟨V,V⟩ = −1 and ⟨V,U1⟩ = −coshΦ");

    let dv1 = d1(&pf.v1, p);
    let dv2 = d1(&pf.v2, p);
    let dv3 = d1(&pf.v3, p);
    let pu2: Vec<DualVec3> = (0..n).map(|i| f.u2[i].scale(pf.p[i])).collect();
    b.add("2.34", Comparison::vectors(&dv1, &pu2)).discretized();

    let norms: Vec<DualScalar> = dv1
        .iter()
        .map(|d| d.norm().unwrap_or(DualScalar::new(f64::NAN, f64::NAN)))
        .collect();
    let abs_p: Vec<DualScalar> = pf.p.iter().map(|x| x.abs()).collect();
    b.add("2.35", Comparison::duals(&abs_p, &norms))
        .discretized()
        .note("|P| against ∥V1′∥");

    let normalized: Vec<DualVec3> = (0..n)
        .map(|i| {
            pf.p[i]
                .recip()
                .map(|s| dv1[i].scale(s))
                .unwrap_or(DualVec3::ZERO)
        })
        .collect();
    b.add("2.36", Comparison::vectors(&pf.v2, &normalized))
        .discretized()
        .note("V2 against V1′/P");

    let wedge: Vec<DualVec3> = (0..n).map(|i| pf.v1[i].cross(pf.v2[i])).collect();
    let minus_wedge: Vec<DualVec3> = wedge.iter().map(|w| -*w).collect();
    let main = Comparison::vectors(&pf.v3, &minus_wedge);
    b.add("2.37", main)
        .variant("adopted", &main)
        .variant("printed-convention", &Comparison::vectors(&pf.v3, &wedge))
        .note("V3 = −V1∧V2: the V-frame is left-handed under the adopted cross product");

    let m = transform_matrix(phi);
    let sq: Vec<DualScalar> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| (0..3).map(|k| m[i][k] * m[k][j]).sum())
        .collect();
    let id: Vec<DualScalar> = (0..9)
        .map(|k| DualScalar::from_real(if k % 4 == 0 { 1.0 } else { 0.0 }))
        .collect();
    b.add("2.38-involution", Comparison::duals(&sq, &id))
        .tolerance(DEGENERATE_TOLERANCE);

    let back: Vec<DualVec3> = (0..n)
        .flat_map(|i| apply_matrix(&m, [pf.v1[i], pf.v2[i], pf.v3[i]]))
        .collect();
    let orig: Vec<DualVec3> = (0..n).flat_map(|i| [f.u1[i], f.u2[i], f.u3[i]]).collect();
    b.add("2.39", Comparison::vectors(&back, &orig))
        .tolerance(DEGENERATE_TOLERANCE);

    let (c, s, ps) = (phi.real.cosh(), phi.real.sinh(), phi.dual);
    let split: Vec<DualVec3> = (0..n)
        .flat_map(|i| {
            let (v1, v2, v3) = (pf.v1[i], pf.v2[i], pf.v3[i]);
            [
                rv(
                    v1.real * c + v3.real * s,
                    v1.dual * c + v3.dual * s + (v1.real * s + v3.real * c) * ps,
                ),
                rv(v2.real, v2.dual),
                rv(
                    -(v1.real * s) - v3.real * c,
                    -(v1.dual * s) - v3.dual * c - (v1.real * c + v3.real * s) * ps,
                ),
            ]
        })
        .collect();
    b.add("2.40", Comparison::vectors(&split, &orig));

    let lhs: Vec<DualVec3> = (0..n).flat_map(|i| [dv1[i], dv2[i], dv3[i]]).collect();
    let rhs: Vec<DualVec3> = (0..n)
        .flat_map(|i| {
            let (pp, qq) = (pf.p[i], pf.q[i]);
            [
                pf.v2[i].scale(pp),
                pf.v1[i].scale(pp) - pf.v3[i].scale(qq),
                pf.v2[i].scale(qq),
            ]
        })
        .collect();
    b.add("2.41", Comparison::vectors(&lhs, &rhs)).discretized();

    let dd1 = diff_periodic(&pf.v1, p, DerivOrder::Second);
    let det_q: Vec<DualScalar> = (0..n)
        .map(|i| {
            let det = pf.v1[i].cross(dv1[i]).dot(dd1[i]);
            det.checked_div(dv1[i].dot(dv1[i]))
                .unwrap_or(DualScalar::new(f64::NAN, f64::NAN))
        })
        .collect();
    b.add("2.41-det", Comparison::duals(&det_q, &pf.q))
        .discretized()
        .note("Q = det(V1,V1′,V1″)/⟨V1′,V1′⟩ with det(A,B,C) = ⟨A∧B,C⟩");

    let (rv1, sv1) = split_parts(&pf.v1);
    let (rv2, sv2) = split_parts(&pf.v2);
    let (rv3, sv3) = split_parts(&pf.v3);
    let (a1, b1) = (d1(&rv1, p), d1(&sv1, p));
    let (a2, b2) = (d1(&rv2, p), d1(&sv2, p));
    let (a3, b3) = (d1(&rv3, p), d1(&sv3, p));
    let lhs: Vec<DualVec3> = (0..n)
        .flat_map(|i| [a1[i], a2[i], a3[i], b1[i], b2[i], b3[i]].map(DualVec3::from_real))
        .collect();
    let rhs: Vec<DualVec3> = (0..n)
        .flat_map(|i| {
            let (pp, pps, qq, qqs) = (pf.p[i].real, pf.p[i].dual, pf.q[i].real, pf.q[i].dual);
            [
                rv2[i] * pp,
                rv1[i] * pp - rv3[i] * qq,
                rv2[i] * qq,
                sv2[i] * pp + rv2[i] * pps,
                sv1[i] * pp + rv1[i] * pps - sv3[i] * qq - rv3[i] * qqs,
                sv2[i] * qq + rv2[i] * qqs,
            ]
            .map(DualVec3::from_real)
        })
        .collect();
    b.add("2.42", Comparison::vectors(&lhs, &rhs)).discretized();

    let dp = d1(&pf.p, p);
    let second: Vec<DualVec3> = (0..n)
        .map(|i| {
            let (k, t) = (f.kappa[i], f.tau[i]);
            f.u1[i].scale(k * k * ch + k * t * sh) + f.u2[i].scale(dp[i])
                - f.u3[i].scale(k * t * ch + t * t * sh)
        })
        .collect();
    b.add("2.43", Comparison::vectors(&dd1, &second)).discretized();

    let projected: Vec<DualScalar> = (0..n).map(|i| dv3[i].dot(pf.v2[i])).collect();
    b.add("2.44", Comparison::duals(&pf.q, &projected))
        .discretized()
        .note("Q = −κ sinhΦ − τ coshΦ against ⟨V3′,V2⟩");

    let split: Vec<DualScalar> = (0..n)
        .flat_map(|i| {
            let (k1, k1s, k2, k2s) = (
                f.kappa[i].real,
                f.kappa[i].dual,
                f.tau[i].real,
                f.tau[i].dual,
            );
            [
                DualScalar::new(
                    k1 * c + k2 * s,
                    k1s * c + k2s * s + ps * (k1 * s + k2 * c),
                ),
                DualScalar::new(
                    -k1 * s - k2 * c,
                    -k1s * s - k2s * c - ps * (k1 * c + k2 * s),
                ),
            ]
        })
        .collect();
    let pq: Vec<DualScalar> = (0..n).flat_map(|i| [pf.p[i], pf.q[i]]).collect();
    b.add("2.45", Comparison::duals(&split, &pq));

    let psi_bar: Vec<DualVec3> = (0..n).map(|i| pf.psi_bar(i)).collect();
    let darboux: Vec<DualVec3> = (0..n)
        .flat_map(|i| {
            [
                psi_bar[i].cross(pf.v1[i]),
                psi_bar[i].cross(pf.v2[i]),
                psi_bar[i].cross(pf.v3[i]),
            ]
        })
        .collect();
    b.add("2.46", Comparison::vectors(&lhs_first(&dv1, &dv2, &dv3), &darboux))
        .discretized()
        .note("V_i′ = Ψ̄ ∧ V_i with Ψ̄ = QV1 − PV3");

    let psi: Vec<DualVec3> = (0..n).map(|i| f.psi(i)).collect();
    let minus_bar: Vec<DualVec3> = psi_bar.iter().map(|x| -*x).collect();
    b.add("2.49", Comparison::vectors(&psi, &minus_bar))
        .tolerance(DEGENERATE_TOLERANCE)
        .note("Ψ = −Ψ̄");

    let (ip, iq) = (ctx.int_p, ctx.int_q);
    let split: Vec<DualVec3> = (0..n)
        .map(|i| {
            let (v1, v3) = (pf.v1[i], pf.v3[i]);
            rv(
                v3.real * ip.real - v1.real * iq.real,
                v3.real * ip.dual + v3.dual * ip.real - v1.real * iq.dual - v1.dual * iq.real,
            )
        })
        .collect();
    b.add("2.51", Comparison::vectors(&split, &ctx.d_v));
}

fn lhs_first(a: &[DualVec3], b: &[DualVec3], c: &[DualVec3]) -> Vec<DualVec3> {
    (0..a.len()).flat_map(|i| [a[i], b[i], c[i]]).collect()
}

fn v_invariant_relations(b: &mut Builder, ctx: &Context) {
    let (f, pf) = (ctx.f, ctx.pf);
    let n = ctx.n();
    let phi = ctx.phi;
    let [v1, v2, v3] = &ctx.v;
    let ang = ParallelAngle::new(phi).expect("parallel frame was built from a finite angle");
    let pred = corollary_expand(&ctx.u[0], &ctx.u[2], ang);
    let (ik, it) = (ctx.int_k, ctx.int_t);

    b.add(
        "2.52",
        Comparison::series_const(&ctx.pitch_ambient(&pf.v1), v1.pitch_closed),
    )
    .note("⟨d,v1*⟩ + ⟨d*,v1⟩ with D from the U-frame, against ∮q*");
    b.add(
        "2.53",
        Comparison::real(v1_pitch_expanded(phi, ik, it), v1.pitch_closed),
    );
    b.add("2.54-vs-2.52", Comparison::real(pred.pitch_v1, v1.pitch_closed));
    b.add(
        "2.55",
        Comparison::duals_const(&ctx.angle_ambient(&pf.v1), v1.angle),
    )
    .note("−⟨D,V1⟩ per node against −∮Q");
    b.add("2.56", Comparison::dual(pred.angle_v1, v1.angle));
    b.add(
        "2.57",
        Comparison::dual(
            DualScalar::new(v1.lambda, v1.pitch),
            DualScalar::new(pred.angle_v1.real, pred.pitch_v1),
        ),
    );
    frame_drall(b, "2.58", v1, &pf.v1, ctx.period);
    let expanded: Vec<f64> = (0..n)
        .map(|i| v1_drall_expanded(phi, f.kappa[i], f.tau[i]))
        .collect();
    let theorem: Vec<f64> = pf.p.iter().map(|x| x.dual / x.real).collect();
    b.add("2.59", Comparison::series(&expanded, &theorem));

    b.add("2.60", Comparison::series_const(&ctx.pitch_ambient(&pf.v2), 0.0));
    b.add(
        "2.61",
        Comparison::duals_const(&ctx.angle_ambient(&pf.v2), DualScalar::ZERO),
    );
    frame_drall(b, "2.62", v2, &pf.v2, ctx.period);
    let pairs: Vec<(f64, f64)> = v2
        .drall
        .samples
        .iter()
        .zip(&ctx.u[1].drall.samples)
        .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
        .collect();
    if pairs.len() == n {
        let (l, r): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        b.add("2.63-vs-2.14", Comparison::series(&l, &r))
            .note("(qq* − pp*)/(q² − p²) against (k2k2* − k1k1*)/(k2² − k1²)");
    } else {
        b.skip("2.63-vs-2.14", "central-normal drall denominator vanishes");
    }

    b.add(
        "2.64",
        Comparison::series_const(&ctx.pitch_ambient(&pf.v3), v3.pitch_closed),
    )
    .note("⟨d,v3*⟩ + ⟨d*,v3⟩ with D from the U-frame, against ∮p*");
    b.add(
        "2.65",
        Comparison::real(v3_pitch_expanded(phi, ik, it), v3.pitch_closed),
    );
    b.add("2.66", Comparison::real(pred.pitch_v3, v3.pitch_closed));
    b.add(
        "2.67",
        Comparison::duals_const(&ctx.angle_ambient(&pf.v3), v3.angle),
    )
    .note("−⟨D,V3⟩ per node against −∮P");
    b.add("2.68", Comparison::dual(pred.angle_v3, v3.angle));
    b.add(
        "2.69",
        Comparison::dual(
            DualScalar::new(v3.lambda, v3.pitch),
            DualScalar::new(pred.angle_v3.real, pred.pitch_v3),
        ),
    );
    frame_drall(b, "2.70", v3, &pf.v3, ctx.period);
    let expanded: Vec<f64> = (0..n)
        .map(|i| v3_drall_expanded(phi, f.kappa[i], f.tau[i]))
        .collect();
    let theorem: Vec<f64> = pf.q.iter().map(|x| x.dual / x.real).collect();
    b.add("2.71", Comparison::series(&expanded, &theorem));
}

fn cbar_relations(b: &mut Builder, ctx: &Context) {
    let pf = ctx.pf;
    let fam = AxisFamily {
        spacelike: CaseIds {
            unit: "2.72",
            split: "2.74",
            pitch: "2.75",
            pitch_frame: "2.76",
            angle: "2.78",
            angle_frame: "2.79",
            denominator: "2.81-denominator",
            drall: "2.81",
        },
        timelike: CaseIds {
            unit: "2.82",
            split: "2.84",
            pitch: "2.85",
            pitch_frame: "2.86",
            angle: "2.88",
            angle_frame: "2.89",
            denominator: "2.91-denominator",
            drall: "2.91",
        },
        zero: "2.79-theta-zero",
        e1: &pf.v1,
        e3: &pf.v3,
        a: &pf.p,
        b: &pf.q,
        int_a: ctx.int_p,
        int_b: ctx.int_q,
        sign: -1.0,
        first: &ctx.v[0],
        third: &ctx.v[2],
        rotation: (0..ctx.n()).map(|i| pf.psi_bar(i)).collect(),
        data: &ctx.bar,
        angle_name: "Θ",
    };
    pfaff_family_relations(b, ctx, &fam);

    // compositions through the U-frame
    const SPACE: [&str; 3] = ["2.73", "2.77", "2.80"];
    const TIME: [&str; 3] = ["2.83", "2.87-literal-vs-corrected", "2.90"];
    let bar = match &ctx.bar {
        Ok(bar) => bar,
        Err(reason) => {
            for id in SPACE.into_iter().chain(TIME) {
                b.skip(id, reason.clone());
            }
            return;
        }
    };
    let (ids, off) = match bar.case {
        PfaffCase::Spacelike => (SPACE, TIME),
        PfaffCase::Timelike => (TIME, SPACE),
    };
    for id in off {
        b.skip(id, format!("parallel rotation vector is {}", case_name(bar.case)));
    }
    let f = ctx.f;
    let composed: Vec<DualVec3> = (0..ctx.n())
        .map(|i| cbar_composed(bar.case, bar.angle[i] + ctx.phi, f.u1[i], f.u3[i]))
        .collect();
    b.add(ids[0], Comparison::vectors(&composed, &bar.axis))
        .note("axis through the U-frame with the angle Θ + Φ");

    let (u1, u3) = (&ctx.u[0], &ctx.u[2]);
    let literal_note = "starred factor read as φ* + θ* (corrected) and as φ′* + θ* with \
                        φ′* = dφ*/dt = 0 (literal)";
    let triple = match cbar_invariants(pf, bar) {
        Ok(t) => t,
        Err(_) => {
            // the compositions hold node by node for any Θ(t); compare them
            // with the ambient contraction of D against C̄(t)
            let n = ctx.n();
            let ambient = ctx.pitch_ambient(&bar.axis);
            let composed = |star| -> Vec<f64> {
                (0..n)
                    .map(|i| cbar_pitch_composed(bar.case, bar.angle[i], ctx.phi, u1, u3, star))
                    .collect()
            };
            let corrected = Comparison::series(&composed(StarFactor::Corrected), &ambient);
            let e = b.add(ids[1], corrected);
            if bar.case == PfaffCase::Timelike {
                let literal = Comparison::series(&composed(StarFactor::Literal), &ambient);
                e.variant("literal", &literal)
                    .variant("corrected", &corrected)
                    .note(format!(
                        "{literal_note}; Θ varies, so per node against ⟨d,c̄*⟩ + ⟨d*,c̄⟩"
                    ));
            } else {
                e.note("Θ varies: per node against ⟨d,c̄*⟩ + ⟨d*,c̄⟩");
            }
            let angles: Vec<DualScalar> = (0..n)
                .map(|i| cbar_angle_composed(bar.case, bar.angle[i] + ctx.phi, u1.angle, u3.angle))
                .collect();
            b.add(ids[2], Comparison::duals(&angles, &ctx.angle_ambient(&bar.axis)))
                .note("Θ varies: per node against −⟨D,C̄⟩");
            return;
        }
    };
    let theta = constant_angle(bar).expect("checked by cbar_invariants");
    let corrected = Comparison::real(
        cbar_pitch_composed(bar.case, theta, ctx.phi, u1, u3, StarFactor::Corrected),
        triple.pitch_closed,
    );
    let e = b.add(ids[1], corrected);
    if bar.case == PfaffCase::Timelike {
        let literal = Comparison::real(
            cbar_pitch_composed(bar.case, theta, ctx.phi, u1, u3, StarFactor::Literal),
            triple.pitch_closed,
        );
        e.variant("literal", &literal)
            .variant("corrected", &corrected)
            .note(format!("{literal_note}; against the closed-form pitch"));
    }
    b.add(
        ids[2],
        Comparison::dual(
            cbar_angle_composed(bar.case, theta + ctx.phi, u1.angle, u3.angle),
            triple.angle,
        ),
    );
}

fn reduction_relations(b: &mut Builder, ctx: &Context) {
    const IDS: [&str; 6] = [
        "reduce-frame",
        "reduce-curvatures",
        "reduce-V1-U1",
        "reduce-V2-U2",
        "reduce-V3-U3",
        "reduce-Cbar-C",
    ];
    if ctx.phi != DualScalar::ZERO {
        for id in IDS {
            b.skip(id, "reduction entries need Φ = 0");
        }
        return;
    }
    let (f, pf) = (ctx.f, ctx.pf);
    let n = ctx.n();
    let v: Vec<DualVec3> = (0..n)
        .flat_map(|i| [pf.v1[i], pf.v2[i], pf.v3[i]])
        .collect();
    let u: Vec<DualVec3> = (0..n).flat_map(|i| [f.u1[i], f.u2[i], -f.u3[i]]).collect();
    b.add(IDS[0], Comparison::vectors(&v, &u))
        .tolerance(REDUCTION_TOLERANCE)
        .note("(V1, V2, V3) = (U1, U2, −U3)");
    let pq: Vec<DualScalar> = (0..n).flat_map(|i| [pf.p[i], pf.q[i]]).collect();
    let kt: Vec<DualScalar> = (0..n).flat_map(|i| [f.kappa[i], -f.tau[i]]).collect();
    b.add(IDS[1], Comparison::duals(&pq, &kt))
        .tolerance(REDUCTION_TOLERANCE)
        .note("(P, Q) = (κ, −τ)");

    let flat = |t: &InvariantTriple, s: f64| -> Vec<f64> {
        [t.lambda * s, t.pitch * s, t.pitch_closed * s]
            .into_iter()
            .chain(t.drall.samples.iter().map(|x| x.unwrap_or(0.0)))
            .collect()
    };
    for (k, id, s) in [(0, IDS[2], 1.0), (1, IDS[3], 1.0), (2, IDS[4], -1.0)] {
        // drall is even in the axis, so only the integral parts flip
        let mut rhs = flat(&ctx.u[k], 1.0);
        for x in rhs.iter_mut().take(3) {
            *x *= s;
        }
        b.add(id, Comparison::series(&flat(&ctx.v[k], 1.0), &rhs))
            .tolerance(REDUCTION_TOLERANCE);
    }

    match (&ctx.c, &ctx.bar) {
        (Ok(c), Ok(bar)) => {
            let s = match c.case {
                PfaffCase::Timelike => 1.0,
                PfaffCase::Spacelike => -1.0,
            };
            let flipped: Vec<DualVec3> = c.axis.iter().map(|x| *x * s).collect();
            b.add(IDS[5], Comparison::vectors(&bar.axis, &flipped))
                .tolerance(REDUCTION_TOLERANCE)
                .note("C̄ = C (timelike) or −C (spacelike)");
        }
        (Err(e), _) | (_, Err(e)) => b.skip(IDS[5], e.clone()),
    }
}

/// Frenet, orthonormality and frame-relation entries for a sampled frame.
pub fn verify_frenet(frame: &SampledFrame, tol: Tolerances) -> RelationReport {
    let mut b = Builder::new();
    frenet_relations(&mut b, frame);
    b.finish(tol)
}

/// Every relation on the curve `spec` sampled at `n` nodes, with the
/// parallel surface at angle `ang`.
pub fn verify_relations(
    spec: &CurveSpec,
    ang: ParallelAngle,
    n: usize,
    tol: Tolerances,
) -> Result<RelationReport, VerifyError> {
    let frame = frenet(&sample_curve(spec, n)?)?;
    let pf = parallel_frame(&frame, ang)?;
    Ok(verify_frame(&frame, &pf, tol))
}

/// As [`verify_relations`] on already constructed frames.
pub fn verify_frame(frame: &SampledFrame, pf: &ParallelFrame, tol: Tolerances) -> RelationReport {
    let ctx = Context::new(frame, pf);
    let mut b = Builder::new();
    frenet_relations(&mut b, frame);
    u_invariant_relations(&mut b, &ctx);
    c_relations(&mut b, &ctx);
    v_frame_relations(&mut b, &ctx);
    v_invariant_relations(&mut b, &ctx);
    cbar_relations(&mut b, &ctx);
    reduction_relations(&mut b, &ctx);
    b.finish(tol)
}
