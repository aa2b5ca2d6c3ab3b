//! Exact ℸ* for every finite abelian group of order 3 to 16, with the interval check.

use std::time::Instant;

use krull::blockmonoid::LabeledMonoid;
use krull::group::groups_of_order;
use krull::invariants::{daleth_star, verify_daleth_interval};

fn main() -> krull::Result<()> {
    let max_order = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(16u64);
    for order in 3..=max_order {
        for group in groups_of_order(order) {
            let start = Instant::now();
            let monoid = LabeledMonoid::full(group.clone())?;
            let daleth = daleth_star(&monoid)?;
            let check = verify_daleth_interval(&monoid)?;
            println!(
                "{group:<14} ℸ* = {:?}  interval: {}  ({:.2?})",
                daleth.values,
                check.holds,
                start.elapsed()
            );
        }
    }
    Ok(())
}
