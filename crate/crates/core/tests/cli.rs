//! End-to-end runs of the command-line front end.

use std::fs;
use std::path::Path;
use std::process::Command;

use dual_ruled::shell::report::{emit_report, parse_report};
use dual_ruled::shell::run;

const CIRCLE: &str = r#"{
  "period": 6.283185307179586,
  "samples": 256,
  "director": {"kind": "hyperboloid_circle", "a": 0.6931471805599453},
  "moment": {"kind": "base_curve", "components": [
    {"cos": [0.1, 0.2]}, {"sin": [0.0, 0.3]}, {"cos": [0.4, 0.0, 0.1], "sin": [0.2]}
  ]}
}"#;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("dual-ruled").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn invariants_report_is_json_and_reemits_identically() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    for args in [
        vec!["invariants", f.as_str()],
        vec!["parallel", f.as_str(), "--phi", "0.5", "--phistar", "-0.2"],
        vec!["verify", f.as_str(), "--phi", "0.5", "--phistar", "0.2", "--samples", "1024"],
    ] {
        let r = cli(&args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.err);
        assert!(r.err.is_empty());
        let doc = parse_report(&r.out).unwrap();
        assert_eq!(doc.command, args[0]);
        assert_eq!(emit_report(&doc), r.out);
    }
}

#[test]
fn verify_with_zero_tolerance_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    let r = cli(&["verify", &f, "--tol-abs", "1e-20", "--tol-rel", "1e-20"]);
    assert_eq!(r.code, 2);
    let doc = parse_report(&r.out).unwrap();
    assert!(doc.summary.unwrap().fail > 0);
}

#[test]
fn file_phi_is_the_default_angle_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let with_phi = CIRCLE.replacen('{', r#"{"phi": {"real": 0.3, "dual": 0.1},"#, 1);
    let f = write(dir.path(), "p.json", &with_phi);
    let doc = parse_report(&cli(&["parallel", &f]).out).unwrap();
    assert_eq!(doc.phi.map(|p| (p.real, p.dual)), Some((0.3, 0.1)));
    let doc = parse_report(&cli(&["parallel", &f, "--phistar", "-1"]).out).unwrap();
    assert_eq!(doc.phi.map(|p| (p.real, p.dual)), Some((0.3, -1.0)));
}

#[test]
fn invalid_inputs_exit_one_with_a_named_cause() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (CIRCLE.replacen('{', r#"{"colour": "red","#, 1), "colour"),
        (CIRCLE.replace("6.283185307179586", "0"), "period"),
        (CIRCLE.replace("\"samples\": 256", "\"samples\": 4"), "samples"),
        (CIRCLE.replace("hyperboloid_circle", "helix"), "director"),
        ("{\"period\": 1,".to_string(), "malformed JSON"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let f = write(dir.path(), &format!("bad{i}.json"), text);
        let r = cli(&["invariants", &f]);
        assert_eq!(r.code, 1, "{needle}");
        assert!(r.out.is_empty());
        assert!(r.err.contains(needle), "{needle}: {}", r.err);
    }
    let r = cli(&["invariants", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("cannot read"));
}

#[test]
fn degenerate_parallel_angle_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let plain = CIRCLE.replace("\"samples\": 256,", "");
    let f = write(dir.path(), "c.json", &plain);
    // p = sinh a coshφ − cosh a sinhφ vanishes at tanhφ = 0.6, φ = ln 2
    let r = cli(&["parallel", &f, "--phi", "0.6931471805599453"]);
    assert_eq!(r.code, 1, "{}", r.out);
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(cli(&["frobnicate"]).code, 1);
    assert_eq!(cli(&["mesh", "x.json", "--surface", "U9", "-o", "m.obj"]).code, 1);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("verify"));
    let version = cli(&["--version"]);
    assert_eq!(version.code, 0);
    assert!(version.out.contains(env!("CARGO_PKG_VERSION")));
}

fn obj(dir: &Path, f: &str, surface: &str, extra: &[&str]) -> String {
    let out = dir.join(format!("{surface}.obj"));
    let out = out.to_str().unwrap();
    let mut args = vec!["mesh", f, "--surface", surface, "-o", out];
    args.extend_from_slice(extra);
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.is_empty());
    fs::read_to_string(out).unwrap()
}

#[test]
fn mesh_has_two_vertices_and_one_quad_per_node() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    for surface in ["U1", "V1", "C", "cbar"] {
        let text = obj(dir.path(), &f, surface, &["--phi", "0.2"]);
        let count = |p: &str| text.lines().filter(|l| l.starts_with(p)).count();
        assert_eq!(count("v "), 512, "{surface}");
        assert_eq!(count("f "), 256, "{surface}");
        // the strip closes on itself
        assert!(text.lines().any(|l| l == "f 511 512 2 1"), "{surface}");
    }
}

#[test]
fn parallel_mesh_at_zero_angle_is_the_generator_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    let u1 = obj(dir.path(), &f, "U1", &[]);
    let v1 = obj(dir.path(), &f, "V1", &[]);
    assert_eq!(u1, v1);
}

#[test]
fn mesh_rejects_non_positive_half_width() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    let out = dir.path().join("m.obj");
    let r = cli(&["mesh", &f, "--surface", "U1", "--half-width", "0", "-o", out.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("half-width"));
    assert!(!out.exists());
}

#[test]
fn binary_exit_codes_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", CIRCLE);
    let bin = env!("CARGO_BIN_EXE_dual-ruled");
    let ok = Command::new(bin).args(["invariants", &f]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), cli(&["invariants", &f]).out);
    let fail = Command::new(bin).args(["verify", &f, "--tol-abs", "0", "--tol-rel", "0"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(2));
    let bad = Command::new(bin).args(["invariants", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}
