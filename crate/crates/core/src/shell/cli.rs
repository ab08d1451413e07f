//! Command-line front end. Exit codes: 0 success, 1 invalid input or
//! construction failure, 2 relation failures present in a `verify` report.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dualnum::DualScalar;
use crate::parallel::ParallelAngle;
use crate::shell::mesh::{export_mesh, MeshSurface};
use crate::shell::report::{emit_report, invariants_report, parallel_report, verify_report};
use crate::shell::{parse_curve_file, CurveFile, ShellError};
use crate::verify::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILURES: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dual-ruled", version, about = "Integral invariants of closed ruled surfaces and their parallel surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AngleArgs {
    /// Real part of the parallel angle; overrides the curve file.
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Dual part of the parallel angle; overrides the curve file.
    #[arg(long, allow_negative_numbers = true)]
    phistar: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of the generator frame surfaces and the Pfaffian axis.
    Invariants { file: PathBuf },
    /// Invariants of the parallel surfaces.
    Parallel {
        file: PathBuf,
        #[command(flatten)]
        angle: AngleArgs,
    },
    /// Two-path check of every closed-form relation.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        angle: AngleArgs,
        /// Grid size; defaults to the curve file's `samples`.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = Tolerances::default().abs)]
        tol_abs: f64,
        #[arg(long, default_value_t = Tolerances::default().rel)]
        tol_rel: f64,
    },
    /// Export a ruled surface as a Wavefront OBJ strip.
    Mesh {
        file: PathBuf,
        #[arg(long, ignore_case = true)]
        surface: MeshSurface,
        #[arg(long, default_value_t = 1.0)]
        half_width: f64,
        #[arg(short = 'o', long)]
        output: PathBuf,
        #[command(flatten)]
        angle: AngleArgs,
    },
}

fn load(path: &Path) -> Result<CurveFile, ShellError> {
    let text = std::fs::read_to_string(path).map_err(|source| ShellError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_curve_file(&text)
}

/// Flags override the file's `phi`, which defaults to zero.
fn angle(file: &CurveFile, args: &AngleArgs) -> Result<ParallelAngle, ShellError> {
    let base = file.phi.unwrap_or(DualScalar::ZERO);
    let phi = DualScalar::new(args.phi.unwrap_or(base.real), args.phistar.unwrap_or(base.dual));
    ParallelAngle::new(phi).map_err(|e| ShellError::Value {
        field: "phi".to_string(),
        message: e.to_string(),
    })
}

fn tolerance(field: &str, v: f64) -> Result<f64, ShellError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(ShellError::Value {
            field: field.to_string(),
            message: format!("must be finite and non-negative, got {v}"),
        })
    }
}

/// Runs one pipeline, writing the report to `out`. Returns the exit code.
fn execute(command: Command, out: &mut dyn Write) -> Result<i32, ShellError> {
    let doc = match command {
        Command::Invariants { file } => invariants_report(&load(&file)?)?,
        Command::Parallel { file, angle: a } => {
            let f = load(&file)?;
            parallel_report(&f, angle(&f, &a)?)?
        }
        Command::Verify {
            file,
            angle: a,
            samples,
            tol_abs,
            tol_rel,
        } => {
            let f = load(&file)?;
            let tol = Tolerances {
                abs: tolerance("tol-abs", tol_abs)?,
                rel: tolerance("tol-rel", tol_rel)?,
            };
            verify_report(&f, angle(&f, &a)?, samples.unwrap_or(f.samples), tol)?
        }
        Command::Mesh {
            file,
            surface,
            half_width,
            output,
            angle: a,
        } => {
            let f = load(&file)?;
            export_mesh(&f.spec(), f.samples, angle(&f, &a)?, surface, half_width, &output)?;
            return Ok(EXIT_OK);
        }
    };
    out.write_all(emit_report(&doc).as_bytes())
        .map_err(|source| ShellError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    Ok(if doc.has_failures() {
        EXIT_FAILURES
    } else {
        EXIT_OK
    })
}

/// Entry point shared by the binary and the tests. `args` includes the
/// program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
