//! Fibres of the quartic scroll: generic count, tangency and contained
//! fibres, plus a coarse scan written as CSV.

use slice_twistor::qcore::Quaternion;
use slice_twistor::surfaces::{catalog, discriminant_scan, fiber_cardinality, FiberFlag, ScanBox};

fn main() -> slice_twistor::Result<()> {
    let k = catalog::quartic_scroll();
    for q in [
        Quaternion::new(0.4, 1.0, -0.3, 0.2),
        Quaternion::new(0.25 - 0.1, 0.0, 0.3, 0.1),
        Quaternion::new(0.49, 0.7, 0.0, 0.0),
    ] {
        let r = fiber_cardinality(&k, q);
        println!("{q}: count {} distinct {} mult {:?} contained {}", r.count, r.distinct, r.multiplicities, r.contained);
    }

    let scan = discriminant_scan(&k, ScanBox { lo: [-1.0; 4], hi: [1.0; 4] }, [9, 9, 9, 9])?;
    println!(
        "{} cells: {} contained, {} tangent",
        scan.cells.len(),
        scan.count(FiberFlag::ContainedFiber),
        scan.count(FiberFlag::Tangency)
    );
    let csv = scan.to_csv();
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
