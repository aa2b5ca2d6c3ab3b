//! Replays the witness element of every case of small ℸ*.

use krull::constructions::{prop34_witness, Case, CaseParams};

fn main() -> krull::Result<()> {
    for case in Case::ALL {
        let witness = prop34_witness(case, CaseParams::default())?;
        let replay = witness.replay()?;
        println!(
            "case {case:<4} {:<10} element {:<28} L = {:?} c = {} (expected {}) ℛ = {:?}",
            witness.monoid.group().to_string(),
            replay.element,
            replay.lengths,
            replay.catenary,
            replay.expected_catenary,
            replay.relation_distances,
        );
        if let Some((bound, set)) = &witness.expected_scan {
            println!("         scans up to {bound} should give Ca = ℛ = {set:?}");
        }
    }
    Ok(())
}
