//! Slice functions from splittings: evaluation, the slice product, normal
//! function and derivatives.

use slice_twistor::qcore::Quaternion;
use slice_twistor::sampling;
use slice_twistor::slice::{catalog, check_sliceness, normal, slice_derivative, slice_product, SliceFunction};
use slice_twistor::qcore::ImaginaryUnit;

fn main() -> slice_twistor::Result<()> {
    let f = SliceFunction::parse("v^2", "v^2", "1", "1")?;
    let x = Quaternion::new(0.3, 0.2, -0.7, 1.1);
    println!("f(x) = {}", f.eval(x)?);

    let f0 = catalog::f0();
    let p = slice_product(&catalog::identity(), &catalog::one_minus_ii())?;
    println!("x * (1 - Ii) at x: {}   2 f0(x): {}", p.eval(x)?, f0.eval(x)? * 2.0);

    println!("N(x - j) at x: {}", normal(&catalog::x_minus_j()).eval(x)?);
    println!("d/dx x^2 at x: {}  (2x = {})", slice_derivative(&catalog::x_squared()).eval(x)?, x * 2.0);

    let mut rng = sampling::rng(1);
    let ev = |q: Quaternion| f0.eval(q);
    let r = check_sliceness(&ev, ImaginaryUnit::J, ImaginaryUnit::K, &mut rng, 100, 1e-10)?;
    println!("representation formula residual for f0: {:e}", r.residual);
    Ok(())
}
