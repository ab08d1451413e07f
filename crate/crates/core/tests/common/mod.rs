//! Curves shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use dual_ruled::frenet::{CurveSpec, Director, FourierSeries, Moment};

/// `a` with `sinh a = 3/4`, `cosh a = 5/4`.
pub fn circle_a() -> f64 {
    0.6f64.atanh()
}

pub fn circle(moment: Moment) -> CurveSpec {
    CurveSpec::hyperboloid_circle(circle_a(), moment)
}

pub fn fixed_point() -> Moment {
    Moment::Point { p: [0.3, -0.2, 0.5] }
}

fn series(cos: &[f64], sin: &[f64]) -> FourierSeries {
    FourierSeries::new(cos.to_vec(), sin.to_vec())
}

/// Elliptic director `(2, 0.8 cos t, 0.5 sin t)`; the Pfaffian axis is
/// timelike with a varying angle.
pub fn ellipse_director() -> Director {
    Director::Fourier {
        components: [series(&[2.0], &[]), series(&[0.0, 0.8], &[]), series(&[], &[0.5])],
    }
}

pub fn base_curve() -> Moment {
    Moment::BaseCurve {
        components: [
            series(&[0.1, 0.2], &[]),
            series(&[0.0], &[0.0, 0.3]),
            series(&[0.4, 0.0, 0.1], &[0.2]),
        ],
    }
}

pub fn ellipse() -> CurveSpec {
    CurveSpec::new(TAU, ellipse_director(), base_curve())
}

pub fn ellipse_cone() -> CurveSpec {
    CurveSpec::new(TAU, ellipse_director(), fixed_point())
}

/// A less symmetric director with second harmonics, over period 3. Its
/// Pfaffian axis changes causal character, so the drall of U2 has poles.
pub fn wobble() -> CurveSpec {
    CurveSpec::new(
        3.0,
        Director::Fourier {
            components: [
                series(&[1.6, 0.1], &[]),
                series(&[0.0, 0.7, 0.05], &[0.0, 0.1]),
                series(&[0.0, 0.1], &[0.6]),
            ],
        },
        Moment::BaseCurve {
            components: [
                series(&[0.0, 0.3], &[0.1]),
                series(&[0.2], &[0.25]),
                series(&[-0.1, 0.0, 0.15], &[]),
            ],
        },
    )
}

/// Every analytic spec used across the suites.
pub fn test_specs() -> Vec<(&'static str, CurveSpec)> {
    vec![
        ("circle-zero", circle(Moment::Zero)),
        ("circle-point", circle(fixed_point())),
        ("circle-base", circle(base_curve())),
        ("ellipse", ellipse()),
        ("ellipse-cone", ellipse_cone()),
        ("wobble", wobble()),
    ]
}
