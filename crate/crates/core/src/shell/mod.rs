//! File formats and the command-line interface.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::frenet::FrenetError;
use crate::minkowski::GeomError;
use crate::parallel::ParallelError;
use crate::verify::VerifyError;

pub mod cli;
mod curve_file;
pub mod mesh;
pub mod report;

pub use cli::run;
pub use curve_file::{parse_curve_file, CurveFile, DEFAULT_SAMPLES};

#[derive(Debug, Error)]
pub enum ShellError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid value for `{field}`: {message}")]
    Value { field: String, message: String },
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Parallel(#[from] ParallelError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Deserializes JSON text, keeping syntax errors apart from schema errors
/// (which carry the path of the offending field).
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ShellError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => ShellError::Schema {
                path,
                message: inner.to_string(),
            },
            _ => ShellError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            },
        }
    })?;
    de.end().map_err(|e| ShellError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

impl From<VerifyError> for ShellError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Frenet(e) => ShellError::Frenet(e),
            VerifyError::Parallel(e) => ShellError::Parallel(e),
        }
    }
}
