//! Points of the transform curve fixed by the real structure: the twistor
//! lines contained in a surface.

use std::f64::consts::{FRAC_PI_2, LN_2};

use slice_twistor::grass::{find_twistor_lines, transform, LineSearch};
use slice_twistor::surfaces::solve_quaddiag_splitting;

fn main() -> slice_twistor::Result<()> {
    let search = LineSearch::default();
    for (l, m, n) in [(LN_2, LN_2, FRAC_PI_2), (0.0, 0.0, 0.5)] {
        let f = solve_quaddiag_splitting(l, m, n, 1.0)?;
        let lines = find_twistor_lines(&transform(&f)?, &search);
        println!("({l:.3}, {m:.3}, {n:.3}): {} line(s)", lines.len());
        for t in lines {
            println!("  v = {}  residual {:e}  boundary {}", t.v, t.residual, t.boundary);
        }
    }
    Ok(())
}
