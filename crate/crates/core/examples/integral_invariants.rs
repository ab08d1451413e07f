//! Angle of pitch, pitch and drall of the frame surfaces and the Pfaffian
//! axis surface of a closed ruled surface.

use dual_ruled::frenet::{frenet, pfaffian, sample_curve, CurveSpec, Director, FourierSeries, FrameAxis, Moment};
use dual_ruled::invariants::{axis_invariants_lenient, pfaff_axis_invariants, steiner, InvariantTriple};

fn show(name: &str, t: &InvariantTriple) {
    let drall = t
        .drall
        .summary()
        .map_or("undefined".to_string(), |s| format!("[{:.4}, {:.4}]", s.min, s.max));
    println!(
        "{name:3} Λ = {}  λ = {:.6}  L = {:.6}  L(closed) = {:.6}  drall {drall}",
        t.angle, t.lambda, t.pitch, t.pitch_closed
    );
}

fn main() {
    let series = |c: &[f64], s: &[f64]| FourierSeries::new(c.to_vec(), s.to_vec());
    let spec = CurveSpec::new(
        std::f64::consts::TAU,
        Director::Fourier {
            components: [series(&[2.0], &[]), series(&[0.0, 0.8], &[]), series(&[], &[0.5])],
        },
        Moment::BaseCurve {
            components: [series(&[0.1, 0.2], &[]), series(&[0.0], &[0.0, 0.3]), series(&[0.4, 0.0, 0.1], &[0.2])],
        },
    );
    let frame = frenet(&sample_curve(&spec, 1024).unwrap()).unwrap();
    let d = steiner(&frame);
    println!("Steiner vector D = ({}) U1 + ({}) U3", d.component(FrameAxis::First), d.component(FrameAxis::Third));
    for (name, axis) in [("U1", FrameAxis::First), ("U2", FrameAxis::Second), ("U3", FrameAxis::Third)] {
        show(name, &axis_invariants_lenient(&frame, axis));
    }
    let pd = pfaffian(&frame).unwrap();
    match pfaff_axis_invariants(&frame, &pd) {
        Ok(t) => show("C", &t),
        // the integral invariants of C need a constant axis angle
        Err(e) => println!("C   {e}"),
    }
}
