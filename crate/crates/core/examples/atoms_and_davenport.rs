//! Minimal zero-sum sequences and the Davenport constant of a group.
//!
//! Usage: `cargo run --example atoms_and_davenport -- 2,4`

use krull::blockmonoid::LabeledMonoid;
use krull::group::AbelianGroup;

fn main() -> krull::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "2,4".into());
    let group = AbelianGroup::parse(&spec)?;
    let monoid = LabeledMonoid::full(group.clone())?;
    let table = monoid.class_atoms()?;
    println!(
        "{group}: |G| = {}, D*(G) = {}, D(G) = {}, {} atoms",
        group.order(),
        group.d_star(),
        table.davenport(),
        table.len()
    );
    let longest = table.atoms().iter().filter(|a| a.len() == table.davenport());
    for atom in longest.take(5) {
        let terms: Vec<String> = atom.iter().map(|(g, k)| format!("{g}^{k}")).collect();
        println!("  length {}: {}", atom.len(), terms.join(" "));
    }

    let g = group.canonical_basis().pop().expect("nontrivial group");
    let minus = group.negate(&g)?;
    let order = group.element_order(&g)?;
    let pm = LabeledMonoid::block(group.clone(), &[g.clone(), minus.clone()])?;
    println!(
        "B({{{g}, {minus}}}) has {} atoms and D = {order}",
        pm.class_atoms()?.len()
    );
    Ok(())
}
