//! The JSON report document emitted by every subcommand except `mesh`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::dualnum::DualScalar;
use crate::frenet::{frenet, pfaffian, sample_curve, FrameAxis, PfaffCase, PfaffData};
use crate::invariants::{
    axis_invariants_lenient, pfaff_axis_invariants, pfaff_drall, Drall, DrallSummary,
    InvariantTriple,
};
use crate::parallel::{cbar_invariants, parallel_frame, v_axis_invariants_lenient, ParallelAngle};
use crate::shell::{CurveFile, ShellError};
use crate::verify::{verify_relations, RelationEntry, Status, Tolerances};

pub const VERSION: &str = concat!("dual-ruled ", env!("CARGO_PKG_VERSION"));

/// A reported invariant. `Undefined` (JSON `null`) marks a drall with no
/// defined node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Dual(DualScalar),
    Drall(DrallSummary),
    Real(f64),
    Text(String),
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSummary {
    pub family: String,
    pub moment: String,
    pub samples: usize,
    pub period: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationCounts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub version: String,
    pub command: String,
    pub curve: CurveSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<DualScalar>,
    pub invariants: IndexMap<String, InvariantValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<RelationCounts>,
    pub relations: Vec<RelationEntry>,
}

impl ReportDoc {
    fn new(command: &str, file: &CurveFile, samples: usize) -> Self {
        ReportDoc {
            version: VERSION.to_string(),
            command: command.to_string(),
            curve: CurveSummary {
                family: file.director.family().to_string(),
                moment: file.moment.kind().to_string(),
                samples,
                period: file.period,
            },
            phi: None,
            invariants: IndexMap::new(),
            tolerances: None,
            summary: None,
            relations: Vec::new(),
        }
    }

    pub fn has_failures(&self) -> bool {
        self.relations.iter().any(|e| e.status == Status::Fail)
    }
}

fn dual(x: DualScalar) -> InvariantValue {
    InvariantValue::Dual(DualScalar::new(x.real + 0.0, x.dual + 0.0))
}

fn real(x: f64) -> InvariantValue {
    InvariantValue::Real(x + 0.0)
}

fn drall(d: &Drall) -> InvariantValue {
    d.summary().map_or(InvariantValue::Undefined, |s| {
        InvariantValue::Drall(DrallSummary {
            min: s.min + 0.0,
            max: s.max + 0.0,
            mean: s.mean + 0.0,
            ..s
        })
    })
}

fn case_text(case: PfaffCase) -> InvariantValue {
    InvariantValue::Text(
        match case {
            PfaffCase::Spacelike => "spacelike",
            PfaffCase::Timelike => "timelike",
        }
        .to_string(),
    )
}

type Map = IndexMap<String, InvariantValue>;

fn insert_triple(map: &mut Map, tag: &str, t: &InvariantTriple) {
    map.insert(format!("Lambda_{tag}"), dual(t.angle));
    map.insert(format!("lambda_{tag}"), real(t.lambda));
    map.insert(format!("L_{tag}"), real(t.pitch));
    map.insert(format!("L_closed_{tag}"), real(t.pitch_closed));
    map.insert(format!("drall_{tag}"), drall(&t.drall));
}

/// A Pfaffian axis: always its case and drall, the integral invariants
/// only when the axis angle is constant.
fn insert_pfaff<E: std::fmt::Display>(
    map: &mut Map,
    tag: &str,
    angle_key: &str,
    pd: &PfaffData,
    triple: Result<InvariantTriple, E>,
    drall_fallback: Drall,
) {
    map.insert(format!("case_{tag}"), case_text(pd.case));
    match triple {
        Ok(t) => {
            let mean = pd.angle.iter().copied().sum::<DualScalar>() * (1.0 / pd.angle.len() as f64);
            map.insert(format!("{angle_key}_{tag}"), dual(mean));
            insert_triple(map, tag, &t);
        }
        Err(e) => {
            map.insert(format!("note_{tag}"), InvariantValue::Text(e.to_string()));
            map.insert(format!("drall_{tag}"), drall(&drall_fallback));
        }
    }
}

/// Invariants of the three frame surfaces and of the Pfaffian axis.
pub fn invariants_report(file: &CurveFile) -> Result<ReportDoc, ShellError> {
    let frame = frenet(&sample_curve(&file.spec(), file.samples)?)?;
    let mut doc = ReportDoc::new("invariants", file, file.samples);
    let map = &mut doc.invariants;
    for (tag, axis) in [
        ("U1", FrameAxis::First),
        ("U2", FrameAxis::Second),
        ("U3", FrameAxis::Third),
    ] {
        insert_triple(map, tag, &axis_invariants_lenient(&frame, axis));
    }
    match pfaffian(&frame) {
        Ok(pd) => {
            let fallback = pfaff_drall(&pd, &frame.kappa, &frame.tau);
            insert_pfaff(map, "C", "Omega", &pd, pfaff_axis_invariants(&frame, &pd), fallback);
        }
        Err(e) => {
            map.insert("note_C".to_string(), InvariantValue::Text(e.to_string()));
        }
    }
    Ok(doc)
}

/// Invariants of the parallel surfaces at `ang` and of their Pfaffian axis.
pub fn parallel_report(file: &CurveFile, ang: ParallelAngle) -> Result<ReportDoc, ShellError> {
    let frame = frenet(&sample_curve(&file.spec(), file.samples)?)?;
    let pf = parallel_frame(&frame, ang)?;
    let mut doc = ReportDoc::new("parallel", file, file.samples);
    doc.phi = Some(ang.phi());
    let map = &mut doc.invariants;
    for (tag, axis) in [
        ("V1", FrameAxis::First),
        ("V2", FrameAxis::Second),
        ("V3", FrameAxis::Third),
    ] {
        insert_triple(map, tag, &v_axis_invariants_lenient(&pf, axis));
    }
    match pf.pfaffian_bar() {
        Ok(bar) => {
            let fallback = pfaff_drall(&bar, &pf.p, &pf.q);
            insert_pfaff(map, "Cbar", "Theta", &bar, cbar_invariants(&pf, &bar), fallback);
        }
        Err(e) => {
            map.insert("note_Cbar".to_string(), InvariantValue::Text(e.to_string()));
        }
    }
    Ok(doc)
}

/// The two-path relation report on an `n`-node grid.
pub fn verify_report(
    file: &CurveFile,
    ang: ParallelAngle,
    n: usize,
    tol: Tolerances,
) -> Result<ReportDoc, ShellError> {
    let rep = verify_relations(&file.spec(), ang, n, tol)?;
    let mut doc = ReportDoc::new("verify", file, n);
    doc.phi = Some(ang.phi());
    doc.tolerances = Some(tol);
    doc.summary = Some(RelationCounts {
        pass: rep.count(Status::Pass),
        fail: rep.count(Status::Fail),
        skipped: rep.count(Status::Skipped),
    });
    doc.relations = rep.entries;
    Ok(doc)
}

/// Pretty JSON with a trailing newline. Key order is fixed by the types.
pub fn emit_report(doc: &ReportDoc) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report values are finite");
    text.push('\n');
    text
}

pub fn parse_report(text: &str) -> Result<ReportDoc, ShellError> {
    crate::shell::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shell::parse_curve_file;
    use std::f64::consts::PI;

    fn circle_file(extra: &str) -> CurveFile {
        parse_curve_file(&format!(
            r#"{{"period": 6.283185307179586, {extra}
            "director": {{"kind":"hyperboloid_circle","a":0.6931471805599453}},
            "moment": {{"kind":"zero"}}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn circle_report_contains_lambda_u1() {
        let doc = invariants_report(&circle_file("")).unwrap();
        let InvariantValue::Dual(l) = doc.invariants["Lambda_U1"] else {
            panic!("not dual")
        };
        assert!((l.real + 2.5 * PI).abs() < 1e-8);
        assert_eq!(l.dual, 0.0);
        let text = emit_report(&doc);
        assert!(text.contains("\"Lambda_U1\": {\n      \"real\": -7.8539816"), "{text}");
        assert!(text.contains("\"relations\": []"));
    }

    #[test]
    fn reemission_is_byte_identical() {
        let f = circle_file(r#""samples": 128,"#);
        let docs = [
            invariants_report(&f).unwrap(),
            parallel_report(&f, ParallelAngle::new(DualScalar::new(0.5, 0.2)).unwrap()).unwrap(),
            verify_report(&f, ParallelAngle::new(DualScalar::new(0.5, 0.2)).unwrap(), 128, Tolerances::default())
                .unwrap(),
        ];
        for doc in docs {
            let text = emit_report(&doc);
            let back = parse_report(&text).unwrap();
            assert_eq!(emit_report(&back), text);
        }
    }

    #[test]
    fn degenerate_parallel_is_an_error() {
        // p = κ coshφ + τ sinhφ vanishes at tanhφ = 0.6 on this circle
        let ang = ParallelAngle::new(DualScalar::from_real(0.6f64.atanh())).unwrap();
        assert!(matches!(
            parallel_report(&circle_file(""), ang),
            Err(ShellError::Parallel(_))
        ));
    }
}
