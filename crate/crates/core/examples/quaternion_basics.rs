//! Quaternion arithmetic, the slice decomposition x = a + I b and the chart
//! coordinate of the unit I.

use slice_twistor::qcore::{decompose, i_from_u, u_from_i, Quaternion};

fn main() -> slice_twistor::Result<()> {
    let x = Quaternion::new(1.0, 2.0, -1.0, 0.5);
    let y = Quaternion::new(0.0, 1.0, 1.0, 0.0);
    println!("x = {x}");
    println!("xy = {}, yx = {}", x * y, y * x);
    println!("|x|^2 = {}, x x^c = {}", x.norm_sqr(), x * x.conj());

    let s = decompose(x)?;
    println!("alpha = {}, beta = {}, I = {:?}", s.alpha, s.beta, s.unit.components());

    let u = u_from_i(s.unit)?;
    println!("u(I) = {u}");
    println!("back to I: {:?}", i_from_u(u).components());

    // x as p1 + p2 j
    let (p1, p2) = x.split();
    println!("p1 = {p1}, p2 = {p2}");
    Ok(())
}
