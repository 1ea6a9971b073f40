//! Orthogonal complex structures: push-forward along f0, the intertwining
//! identity and the preimage of a point in the upper half-space.

use slice_twistor::ocs::{j_f0, preimage, pushforward, verify_intertwine};
use slice_twistor::qcore::Quaternion;
use slice_twistor::slice::catalog;

fn main() -> slice_twistor::Result<()> {
    let f0 = catalog::f0();
    let x = Quaternion::new(0.2, 0.9, -0.4, 0.3);
    let j = pushforward(&f0, x)?;
    println!("push-forward at x:");
    for row in j.rows() {
        println!("  {row:>8.4?}");
    }
    println!("J^2 = -1 and orthogonal up to {:e}", j.invariant_residual());

    let q = Quaternion::new(1.0, 2.0, 3.0, 1.0);
    let pre = preimage(q)?;
    println!("preimage of {q}: {}", pre.recompose());
    println!("f0 of it: {}", f0.eval_slice(&pre)?);
    println!("J^f at q invariant residual {:e}", j_f0(q).invariant_residual());
    println!("intertwining residual at q: {:e}", verify_intertwine(q)?);
    Ok(())
}
