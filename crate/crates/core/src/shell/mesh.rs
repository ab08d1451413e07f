//! Wavefront OBJ export of a ruled surface as a closed strip of quads.
//!
//! Node `i` contributes the two vertices `α(tᵢ) ∓ v·e(tᵢ)`, where `e` is the
//! real part of the ruling's dual vector and `α` its foot point.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::frenet::{frenet, pfaffian, sample_curve, CurveSpec};
use crate::minkowski::DualVec3;
use crate::parallel::{parallel_frame, ParallelAngle};
use crate::shell::ShellError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MeshSurface {
    #[value(name = "U1")]
    U1,
    #[value(name = "V1")]
    V1,
    #[value(name = "C")]
    C,
    #[value(name = "Cbar")]
    Cbar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshStats {
    pub vertices: usize,
    pub faces: usize,
}

/// The ruling dual vectors of `surface` at each of `n` nodes.
pub fn ruling_lines(
    spec: &CurveSpec,
    n: usize,
    ang: ParallelAngle,
    surface: MeshSurface,
) -> Result<Vec<DualVec3>, ShellError> {
    let frame = frenet(&sample_curve(spec, n)?)?;
    Ok(match surface {
        MeshSurface::U1 => frame.u1,
        MeshSurface::C => pfaffian(&frame)?.axis,
        MeshSurface::V1 => parallel_frame(&frame, ang)?.v1,
        MeshSurface::Cbar => parallel_frame(&frame, ang)?.pfaffian_bar()?.axis,
    })
}

/// OBJ text for the strip of half-width `half_width` around `lines`.
pub fn mesh_obj(lines: &[DualVec3], half_width: f64) -> Result<(String, MeshStats), ShellError> {
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(ShellError::Value {
            field: "half-width".to_string(),
            message: format!("must be positive and finite, got {half_width}"),
        });
    }
    let mut text = String::new();
    for line in lines {
        let foot = line.foot_point()?;
        for v in [-half_width, half_width] {
            let x = foot + line.real * v;
            writeln!(text, "v {} {} {}", x.0[0], x.0[1], x.0[2]).expect("write to String");
        }
    }
    let n = lines.len();
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b, c, d) = (2 * i + 1, 2 * i + 2, 2 * j + 2, 2 * j + 1);
        writeln!(text, "f {a} {b} {c} {d}").expect("write to String");
    }
    Ok((
        text,
        MeshStats {
            vertices: 2 * n,
            faces: n,
        },
    ))
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ShellError> {
    let fail = |source| ShellError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn export_mesh(
    spec: &CurveSpec,
    n: usize,
    ang: ParallelAngle,
    surface: MeshSurface,
    half_width: f64,
    path: &Path,
) -> Result<MeshStats, ShellError> {
    let lines = ruling_lines(spec, n, ang, surface)?;
    let (text, stats) = mesh_obj(&lines, half_width)?;
    write_atomic(path, &text)?;
    Ok(stats)
}
