//! One step of the length descent on a pair of atoms `g^n, (−g)^n` over `C_n`.

use krull::blockmonoid::ClassSequence;
use krull::group::AbelianGroup;
use krull::invariants::descent_step;

fn main() -> krull::Result<()> {
    for n in 4..=7u64 {
        let group = AbelianGroup::cyclic(n)?;
        let g = group.element(&[1])?;
        let u1 = ClassSequence::from_counts([(g.clone(), n)]);
        let u2 = ClassSequence::from_counts([(group.negate(&g)?, n)]);
        let step = descent_step(&group, &u1, &u2, n as u32)?;
        println!(
            "C_{n}: g1 = {}, g2 = {}, L before = {:?}, L after = {:?}, next = {}, claims hold: {}",
            step.g1,
            step.g2,
            step.lengths_before.values(),
            step.lengths_after.values(),
            step.next,
            step.claims_hold(n as u32),
        );
    }
    Ok(())
}
