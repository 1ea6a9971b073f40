//! Holomorphic maps written as expressions in v.

use num_complex::Complex64;
use slice_twistor::holo::parse;

fn main() -> slice_twistor::Result<()> {
    let f = parse("(v^2 + 1) / (v - 2i) + sqrt(v) * exp(-v)")?;
    let v = Complex64::new(0.5, 1.5);
    println!("f    = {f}");
    println!("f(v) = {}", f.eval(v)?);
    println!("f'   = {}", f.derivative());

    // v -> conj(f(conj v))
    let r = f.reflect();
    println!("reflected at v: {}  conj f(conj v): {}", r.eval(v)?, f.eval(v.conj())?.conj());

    println!("json: {}", f.to_json());

    match parse("1 + * v") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
