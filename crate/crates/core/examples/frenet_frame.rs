//! The dual Frenet frame of a closed curve on the dual hyperbolic unit
//! sphere, sampled on a periodic grid.

use dual_ruled::frenet::{frenet, pfaffian, sample_curve, CurveSpec, Moment, PfaffCase};

fn main() {
    // a = ln 2: sinh a = 3/4, cosh a = 5/4
    let a = 2f64.ln();
    let spec = CurveSpec::hyperboloid_circle(a, Moment::Point { p: [0.3, -0.2, 0.5] });
    let frame = frenet(&sample_curve(&spec, 512).unwrap()).unwrap();
    println!("nodes {}, step {:.5}", frame.len(), frame.step());
    for i in [0, 128, 256] {
        println!(
            "node {i:3}: κ = {}, τ = {}, U1 = {:?}",
            frame.kappa[i], frame.tau[i], frame.u1[i].real
        );
    }
    println!("expected κ = {}, τ = {}", a.sinh(), -a.cosh());

    let pd = pfaffian(&frame).unwrap();
    let case = match pd.case {
        PfaffCase::Spacelike => "spacelike",
        PfaffCase::Timelike => "timelike",
    };
    let (re, du) = pd.angle_spread();
    println!("Pfaffian axis is {case}, Ω = {} (spread {re:.1e} + ε{du:.1e})", pd.angle[0]);
}
