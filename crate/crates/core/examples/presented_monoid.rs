//! A monoid given by six atoms and a rank-two relation lattice.

use krull::invariants::{scan_source, ScanConfig};
use krull::presented::make_example_233;

fn main() -> krull::Result<()> {
    let monoid = make_example_233();
    println!("relations: {:?}", monoid.relations());
    let y0 = [1, 1, 1, 0, 0, 0];
    let fiber = monoid.fiber(&y0)?;
    println!("fiber of {y0:?}:");
    for z in fiber.members() {
        println!("  {:?} (length {})", z.parts(), z.len());
    }
    println!("box check: {}", monoid.verify_fiber_complete(&y0, 2)?);
    let analysis = fiber.analyze();
    println!(
        "c = {}, ℛ = {:?}",
        analysis.catenary,
        analysis.relation_distances.keys().collect::<Vec<_>>()
    );
    let report = scan_source(&monoid, 6, ScanConfig::default())?;
    println!(
        "{} elements up to 6: Ca = {:?}, ℛ = {:?}",
        report.elements_scanned,
        report.ca_observed(),
        report.r_observed()
    );
    Ok(())
}
