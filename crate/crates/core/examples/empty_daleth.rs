//! `G₀ = {e₀, …, e_r}` with `e₀ = −(e₁ + ⋯ + e_r)` in `C_n^r`: ℸ* is empty,
//! yet `W^n = U₀⋯U_r` gives a nonzero catenary degree.

use krull::constructions::example_231;
use krull::invariants::{daleth_star, scan};

fn main() -> krull::Result<()> {
    for (r, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
        let monoid = example_231(r, n)?;
        let bound = n as u32 * (r as u32 + 1);
        let report = scan(&monoid, bound)?;
        println!(
            "r = {r}, n = {n}: {} atoms, ℸ* = {:?}; up to {bound}: Δ = {:?}, Ca = {:?}, ℛ = {:?}",
            monoid.class_atoms()?.len(),
            daleth_star(&monoid)?.values,
            report.delta_observed(),
            report.ca_observed(),
            report.r_observed(),
        );
    }
    Ok(())
}
