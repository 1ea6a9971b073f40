//! Which surfaces contain the lift of which function.

use num_complex::Complex64;
use slice_twistor::slice::catalog as fns;
use slice_twistor::surfaces::{catalog as surf, contains_lift, solve_quaddiag_splitting, CONTAINS_TOL};

fn main() -> slice_twistor::Result<()> {
    let x3 = [0.0, 0.0, 0.0, 1.0].map(|c| Complex64::new(c, 0.0));
    let cases = [
        ("plane X3", surf::plane(x3), fns::f0()),
        ("cone", surf::cone(), fns::cone()),
        ("cubic 1", surf::cubic_nonnormal_1(), fns::cubic_f1()),
        ("quadric Q", surf::quadric_q(), fns::x_squared_plus_one()),
        ("quadric Q", surf::quadric_q(), fns::f0()),
    ];
    for (name, p, f) in cases {
        let r = contains_lift(&p, &f, 300, 7, CONTAINS_TOL)?;
        println!("{name:<10} {:<5} residual {:.2e}", r.contained, r.residual);
    }

    let (l, m, n) = (0.2, 0.7, 0.3);
    let f = solve_quaddiag_splitting(l, m, n, 1.0)?;
    let r = contains_lift(&surf::quaddiag(l, m, n), &f, 300, 7, CONTAINS_TOL)?;
    println!("solved quadric {:<5} residual {:.2e}", r.contained, r.residual);
    println!("surface: {}", surf::quaddiag(l, m, n));
    Ok(())
}
