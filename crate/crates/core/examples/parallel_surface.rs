//! Parallel ruled surfaces at a fixed dual angle and their invariants,
//! compared with the prediction from the generator surface.

use dual_ruled::dualnum::DualScalar;
use dual_ruled::frenet::{frenet, sample_curve, CurveSpec, FrameAxis, Moment};
use dual_ruled::invariants::axis_invariants_lenient;
use dual_ruled::parallel::{cbar_invariants, corollary_expand, parallel_frame, v_axis_invariants_lenient, ParallelAngle};

fn main() {
    let spec = CurveSpec::hyperboloid_circle(2f64.ln(), Moment::Zero);
    let frame = frenet(&sample_curve(&spec, 1024).unwrap()).unwrap();
    let ang = ParallelAngle::new(DualScalar::new(0.5, 0.2)).unwrap();
    let pf = parallel_frame(&frame, ang).unwrap();
    println!("Φ = {}, P = {}, Q = {}", ang.phi(), pf.p[0], pf.q[0]);

    let u1 = axis_invariants_lenient(&frame, FrameAxis::First);
    let u3 = axis_invariants_lenient(&frame, FrameAxis::Third);
    let pred = corollary_expand(&u1, &u3, ang);
    let v1 = v_axis_invariants_lenient(&pf, FrameAxis::First);
    let v3 = v_axis_invariants_lenient(&pf, FrameAxis::Third);
    println!("Λ_V1 = {}  predicted {}", v1.angle, pred.angle_v1);
    println!("L_V1 = {:.9}  predicted {:.9}", v1.pitch_closed, pred.pitch_v1);
    println!("Λ_V3 = {}  predicted {}", v3.angle, pred.angle_v3);
    println!("L_V3 = {:.9}  predicted {:.9}", v3.pitch_closed, pred.pitch_v3);

    let bar = pf.pfaffian_bar().unwrap();
    match cbar_invariants(&pf, &bar) {
        Ok(t) => println!("C̄: Θ = {}, Λ = {}, L = {:.9}", bar.angle[0], t.angle, t.pitch_closed),
        Err(e) => println!("C̄: {e}"),
    }

    // p = κcoshφ + τsinhφ vanishes at tanhφ = 0.6 on this circle
    let bad = ParallelAngle::new(DualScalar::from_real(0.6f64.atanh())).unwrap();
    if let Err(e) = parallel_frame(&frame, bad) {
        println!("φ = artanh 0.6: {e}");
    }
}
