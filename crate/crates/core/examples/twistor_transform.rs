//! The transform curve in the Klein quadric and its inverse.

use num_complex::Complex64;
use slice_twistor::grass::{inverse_transform, transform, transform_by_wedge};
use slice_twistor::sampling;
use slice_twistor::slice::catalog;

fn main() -> slice_twistor::Result<()> {
    for (name, f) in catalog::all() {
        let t = transform(&f)?;
        let xi: Vec<String> = t.xi.iter().map(|m| m.to_string()).collect();
        println!("{name:<12} [{}]", xi.join(", "));
    }

    let f = catalog::cubic_f1();
    let v = Complex64::new(0.3, 0.8);
    let t = transform(&f)?;
    let p = t.eval(v)?;
    println!("klein residual {:e}, wedge agreement {:e}", p.klein_residual(), p.dist(&transform_by_wedge(&f, v)?));

    let mut rng = sampling::rng(2);
    let back = inverse_transform(&t, &mut rng, 20)?;
    println!("recovered g = {}", back.splitting()?.g);
    Ok(())
}
