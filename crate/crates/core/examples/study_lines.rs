//! Lines of Minkowski 3-space as unit dual vectors, and the dual angle
//! between two timelike lines.

use dual_ruled::dualnum::DualScalar;
use dual_ruled::minkowski::{line_to_dual, DualVec3, LineRep, RealVec3};

fn main() {
    let e1 = RealVec3::new(1.0, 0.0, 0.0);
    let (r, th): (f64, f64) = (0.7, 0.3);
    let e = RealVec3::new(r.cosh(), r.sinh() * th.cos(), r.sinh() * th.sin());
    println!("⟨e1,e1⟩ = {}, ⟨e,e⟩ = {:.3}", e1.dot(e1), e.square());
    println!("e1 ∧ e2 = {:?}", e1.cross(RealVec3::new(0.0, 1.0, 0.0)));

    let u = line_to_dual(RealVec3::ZERO, e1).unwrap();
    let v = line_to_dual(RealVec3::new(0.0, 0.0, 1.5), e).unwrap();
    println!("U = {u:?}");
    println!("V = {v:?}");
    println!("⟨U,U⟩ = {}, ⟨V,V⟩ = {}", u.dot(u), v.dot(v));

    // timelike unit lines: ⟨U,V⟩ = −coshΘ with Θ = θ + εθ*
    let c = -u.dot(v);
    let angle = c.lift(f64::acosh, |x| 1.0 / (x * x - 1.0).sqrt());
    println!("dual angle Θ = {angle}: hyperbolic angle θ and Lorentzian distance θ*");
    let back: DualScalar = -angle.cosh();
    println!("check −coshΘ = {back}");

    // inverse map: the foot point is the point of the line nearest the origin
    let rep = LineRep::from_dual(v).unwrap();
    println!("foot point {:?}, direction {:?}", rep.point, rep.direction);
    let again: DualVec3 = rep.to_dual();
    println!("round trip error {:.1e}", (again - v).max_abs());
}
