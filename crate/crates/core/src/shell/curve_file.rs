//! Curve-spec files: JSON with `period`, `samples`, `director`, `moment`
//! and an optional default parallel angle `phi`.

use serde::{Deserialize, Serialize};

use crate::dualnum::DualScalar;
use crate::frenet::{CurveSpec, Director, Moment, MIN_SAMPLES};
use crate::shell::ShellError;

pub const DEFAULT_SAMPLES: usize = 1024;

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub period: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    pub director: Director,
    pub moment: Moment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<DualScalar>,
}

impl CurveFile {
    pub fn spec(&self) -> CurveSpec {
        CurveSpec::new(self.period, self.director.clone(), self.moment.clone())
    }
}

fn value_error(field: &str, message: impl Into<String>) -> ShellError {
    ShellError::Value {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parses and validates a curve file.
///
/// Malformed JSON is a [`ShellError::Parse`]; a missing, unknown or
/// ill-typed field is a [`ShellError::Schema`] carrying its path; a
/// well-typed but unusable value is a [`ShellError::Value`].
pub fn parse_curve_file(text: &str) -> Result<CurveFile, ShellError> {
    let value: serde_json::Value = crate::shell::from_json(text)?;
    if !value.is_object() {
        return Err(ShellError::Schema {
            path: ".".to_string(),
            message: "curve file must be a JSON object".to_string(),
        });
    }
    let file: CurveFile = crate::shell::from_json(text)?;
    validate(&file)?;
    Ok(file)
}

fn validate(file: &CurveFile) -> Result<(), ShellError> {
    if !(file.period.is_finite() && file.period > 0.0) {
        return Err(value_error(
            "period",
            format!("must be positive and finite, got {}", file.period),
        ));
    }
    if file.samples < MIN_SAMPLES {
        return Err(value_error(
            "samples",
            format!("must be at least {MIN_SAMPLES}, got {}", file.samples),
        ));
    }
    if let Some(phi) = file.phi {
        if !phi.is_finite() {
            return Err(value_error("phi", "must be finite"));
        }
    }
    match &file.director {
        Director::HyperboloidCircle { a } => {
            if !a.is_finite() || *a == 0.0 {
                return Err(value_error(
                    "director.a",
                    format!("must be finite and nonzero, got {a}"),
                ));
            }
        }
        Director::Fourier { .. } => {
            let spec = file.spec();
            for i in 0..file.samples {
                let t = spec.node_time(i, file.samples);
                if spec.unit_director(t).is_none() {
                    return Err(value_error(
                        "director",
                        format!("not timelike at t = {t}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{"period": 6.283185307179586,
        "director": {"kind":"hyperboloid_circle","a":0.6931471805599453},
        "moment": {"kind":"zero"}}"#;

    #[test]
    fn parses_circle_with_defaults() {
        let f = parse_curve_file(CIRCLE).unwrap();
        assert_eq!(f.samples, DEFAULT_SAMPLES);
        assert_eq!(f.phi, None);
        let Director::HyperboloidCircle { a } = f.director else {
            panic!("wrong family")
        };
        // a = ln 2: sinh a = 3/4, cosh a = 5/4
        assert!((a.sinh() - 0.75).abs() < 1e-15);
        assert!((a.cosh() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn negative_period_names_period() {
        let text = CIRCLE.replace("6.283185307179586", "-1");
        match parse_curve_file(&text) {
            Err(ShellError::Value { field, .. }) => assert_eq!(field, "period"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_names_key() {
        let text = CIRCLE.replacen('{', r#"{"colour": "red", "#, 1);
        match parse_curve_file(&text) {
            Err(e @ ShellError::Schema { .. }) => assert!(e.to_string().contains("colour"), "{e}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_unknown_key_carries_path() {
        let text = CIRCLE.replace(r#""kind":"zero""#, r#""kind":"point","p":[0,0,0],"q":1"#);
        match parse_curve_file(&text) {
            Err(ShellError::Schema { path, message }) => {
                assert_eq!(path, "moment");
                assert!(message.contains('q'), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(
            parse_curve_file("{\"period\": "),
            Err(ShellError::Parse { .. })
        ));
        assert!(matches!(
            parse_curve_file("[1, 2]"),
            Err(ShellError::Schema { .. })
        ));
    }

    #[test]
    fn missing_field_is_schema_error() {
        let text = r#"{"period": 1.0, "director": {"kind":"hyperboloid_circle","a":1.0}}"#;
        match parse_curve_file(text) {
            Err(e @ ShellError::Schema { .. }) => assert!(e.to_string().contains("moment")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spacelike_fourier_director_is_value_error() {
        let text = r#"{"period": 6.283185307179586,
            "director": {"kind":"fourier","components":[{"cos":[0.5]},{"cos":[0.0,1.0]},{"sin":[1.0]}]},
            "moment": {"kind":"zero"}}"#;
        match parse_curve_file(text) {
            Err(ShellError::Value { field, .. }) => assert_eq!(field, "director"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phi_and_samples_round_trip() {
        let text = CIRCLE.replacen('{', r#"{"samples": 64, "phi": {"real": 0.5, "dual": 0.2}, "#, 1);
        let f = parse_curve_file(&text).unwrap();
        assert_eq!(f.samples, 64);
        assert_eq!(f.phi, Some(DualScalar::new(0.5, 0.2)));
        let again = parse_curve_file(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
    }
}
