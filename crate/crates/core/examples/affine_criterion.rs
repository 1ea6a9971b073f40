//! Transforms of the form (A + Bv) times a fixed line, and the hermitian
//! product that decides whether the function comes from SL(2, R).

use num_complex::Complex64;
use slice_twistor::grass::check_affine_transform;
use slice_twistor::qcore::Quaternion;
use slice_twistor::slice::{catalog, SliceFunction};

fn main() -> slice_twistor::Result<()> {
    let c = |x: f64| Complex64::new(x, 0.0);
    for (a, b, cc, d) in [(1.0, 0.0, 0.0, 1.0), (2.0, 1.0, 1.0, 1.0), (1.0, -1.0, 1.0, 0.0)] {
        let f = catalog::mobius_f0(a, b, cc, d);
        let r = check_affine_transform(&f, c(d), c(cc), 1e-10)?;
        println!("({a}, {b}; {cc}, {d}): hermitian {:.2e} affine {}", r.hermitian.norm(), r.affine);
    }
    let f = SliceFunction::polynomial(&[Quaternion::ZERO, Quaternion::new(1.0, 0.0, 1.0, 0.0)]);
    let r = check_affine_transform(&f, c(1.0), c(0.0), 1e-10)?;
    println!("x(1+j): hermitian {:.3} affine {}", r.hermitian.norm(), r.affine);
    Ok(())
}
