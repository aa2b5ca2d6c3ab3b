//! Davenport constant, ℸ*, a bounded scan and the catenary degree of a
//! monoid with several primes in some classes.

use krull::blockmonoid::LabeledMonoid;
use krull::group::AbelianGroup;
use krull::invariants::invariant_report;

fn main() -> krull::Result<()> {
    let group = AbelianGroup::new(&[2, 2])?;
    let classes = vec![
        (group.element(&[0, 1])?, 2),
        (group.element(&[1, 0])?, 1),
        (group.element(&[1, 1])?, 1),
    ];
    let monoid = LabeledMonoid::new(group, classes)?;
    let report = invariant_report(&monoid, 6, true)?;
    println!("D = {}, D* = {}", report.davenport, report.d_star);
    println!("ℸ* = {:?}", report.daleth_star.as_ref().map(|d| &d.values));
    println!(
        "scan up to {}: {} elements, Δ = {:?}, Ca = {:?}, ℛ = {:?}, max ρ = {}",
        report.scan.bound,
        report.scan.elements_scanned,
        report.scan.delta_observed(),
        report.scan.ca_observed(),
        report.scan.r_observed(),
        report.scan.max_elasticity_ratio().map_or("-".into(), |r| r.to_string()),
    );
    println!("c(H) = {} ({:?})", report.catenary.value, report.catenary.status);
    println!("violations: {:?}", report.violations);
    Ok(())
}
