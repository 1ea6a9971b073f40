//! The lift of a slice function to CP3 and the projection back down.

use num_complex::Complex64;
use slice_twistor::qcore::Quaternion;
use slice_twistor::slice::catalog;
use slice_twistor::twistor::{lift, lift_at, project};

fn main() -> slice_twistor::Result<()> {
    let f = catalog::f0();
    let (u, v) = (Complex64::new(1.0, 1.0), Complex64::new(2.0, 1.0));
    let p = lift(&f, u, v)?;
    println!("lift of f0 at (u, v): [{}]", p.coords().map(|z| z.to_string()).join(", "));

    let f = catalog::x_minus_j();
    for x in [Quaternion::new(0.5, 1.0, 0.0, 0.0), Quaternion::new(-1.0, 0.3, 0.4, 2.0)] {
        let p = lift_at(&f, x)?;
        let down = project(&p).finite().expect("finite");
        println!("f(x) = {}   pi(lift) = {}", f.eval(x)?, down);
    }
    Ok(())
}
