//! Dual-number arithmetic and the derivative-carrying lift of real functions.

use dual_ruled::dualnum::DualScalar;

fn main() {
    let a = DualScalar::new(2.0, 3.0);
    let b = DualScalar::new(0.5, -1.0);
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a + b);
    println!("a * b = {}", a * b);
    println!("a / b = {}", a.checked_div(b).expect("b is not pure dual"));

    // ε² = 0
    let eps = DualScalar::new(0.0, 1.0);
    println!("ε·ε = {}", eps * eps);

    // f(x + εx*) = f(x) + εx*f′(x)
    let x = DualScalar::new(0.4, 1.0);
    println!("sinh {x} = {}", x.sinh());
    println!("cosh {x} = {}", x.cosh());
    println!("tanh {x} = {}", x.tanh());
    println!("sqrt {x} = {}", x.sqrt().unwrap());
    println!("artanh {x} = {}", x.artanh().unwrap());
    let cube = x.lift(|v| v.powi(3), |v| 3.0 * v * v);
    println!("x³ via lift = {cube}, via products = {}", x * x * x);

    // a pure dual number has no inverse
    match eps.recip() {
        Ok(r) => println!("unexpected inverse {r}"),
        Err(e) => println!("1/ε: {e}"),
    }
}
