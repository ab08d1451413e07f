//! Checks every closed-form relation against an independent computation
//! and prints the report, failures first.

use dual_ruled::dualnum::DualScalar;
use dual_ruled::frenet::{CurveSpec, Moment};
use dual_ruled::parallel::ParallelAngle;
use dual_ruled::verify::{verify_relations, Status, Tolerances};

fn main() {
    let spec = CurveSpec::hyperboloid_circle(2f64.ln(), Moment::Point { p: [0.3, -0.2, 0.5] });
    let ang = ParallelAngle::new(DualScalar::new(0.5, 0.2)).unwrap();
    let rep = verify_relations(&spec, ang, 2048, Tolerances::default()).unwrap();
    println!(
        "{} pass, {} fail, {} skipped",
        rep.count(Status::Pass),
        rep.count(Status::Fail),
        rep.count(Status::Skipped)
    );
    for e in rep.failures() {
        println!("FAIL {} residual {:?}", e.id, e.abs_residual);
    }
    for e in &rep.entries {
        let res = e.abs_residual.map_or("-".to_string(), |r| format!("{r:.2e}"));
        let why = e.reason.as_deref().unwrap_or("");
        println!("{:28} {:8?} {res:>9} {why}", e.id, e.status);
        for v in &e.variants {
            println!("{:28}   variant {} pass={}", "", v.name, v.pass);
        }
    }
}
