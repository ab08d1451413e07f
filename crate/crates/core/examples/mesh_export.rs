//! Writes the generator, parallel and Pfaffian axis surfaces as OBJ strips.

use dual_ruled::dualnum::DualScalar;
use dual_ruled::frenet::{CurveSpec, Moment};
use dual_ruled::parallel::ParallelAngle;
use dual_ruled::shell::mesh::{export_mesh, MeshSurface};

fn main() {
    let spec = CurveSpec::hyperboloid_circle(2f64.ln(), Moment::Point { p: [0.3, -0.2, 0.5] });
    let ang = ParallelAngle::new(DualScalar::new(0.3, 0.1)).unwrap();
    let dir = std::env::temp_dir().join("dual-ruled-meshes");
    std::fs::create_dir_all(&dir).unwrap();
    for (name, surface) in [
        ("u1", MeshSurface::U1),
        ("v1", MeshSurface::V1),
        ("c", MeshSurface::C),
        ("cbar", MeshSurface::Cbar),
    ] {
        let path = dir.join(format!("{name}.obj"));
        let stats = export_mesh(&spec, 256, ang, surface, 1.5, &path).unwrap();
        println!("{}: {} vertices, {} faces", path.display(), stats.vertices, stats.faces);
    }
}
