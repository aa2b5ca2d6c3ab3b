//! `max ℸ*(G) = c(G)` and `[2, c(G)] = ℛ` on bounded scans, for groups with `D(G) = D*(G) ≥ 4`.

use std::time::Instant;

use krull::blockmonoid::LabeledMonoid;
use krull::group::AbelianGroup;
use krull::invariants::invariant_report;

fn main() -> krull::Result<()> {
    for spec in ["4", "5", "6", "7", "8", "2,2,2", "3,3", "2,4"] {
        let start = Instant::now();
        let group = AbelianGroup::parse(spec)?;
        let monoid = LabeledMonoid::full(group.clone())?;
        let bound = 2 * monoid.class_atoms()?.davenport() as u32;
        let report = invariant_report(&monoid, bound, true)?;
        let daleth = report.daleth_star.as_ref().expect("requested");
        println!(
            "{group:<12} ℸ* = {:?}  c = {} ({:?})  ℛ ⊇ {:?}  Δ ⊇ {:?}  bound {bound}, {} elements, violations {}  ({:.2?})",
            daleth.values,
            report.catenary.value,
            report.catenary.status,
            report.scan.r_observed(),
            report.scan.delta_observed(),
            report.scan.elements_scanned,
            report.violations.len(),
            start.elapsed()
        );
    }
    Ok(())
}
