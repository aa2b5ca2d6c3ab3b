//! All factorizations of one element, with lengths, distances, elasticity,
//! catenary degree and distances in minimal relations.

use krull::blockmonoid::LabeledMonoid;
use krull::factorization::LabeledFactorizer;
use krull::group::AbelianGroup;

fn main() -> krull::Result<()> {
    let group = AbelianGroup::cyclic(4)?;
    let monoid = LabeledMonoid::full(group.clone())?;
    let factorizer = LabeledFactorizer::new(&monoid)?;

    let g = group.element(&[1])?;
    let minus = group.element(&[3])?;
    let (sg, sm) = (monoid.class_slot(&g).unwrap(), monoid.class_slot(&minus).unwrap());
    let element = monoid.sequence(&[
        (monoid.label_index(sg, 0).unwrap(), 4),
        (monoid.label_index(sm, 0).unwrap(), 4),
    ])?;
    let fiber = factorizer.factorizations(&element)?;
    println!("element {}", element.render(&monoid));
    for z in fiber.members() {
        println!("  length {}: {}", z.len(), factorizer.render_factorization(z));
    }
    let lengths = fiber.length_set();
    let analysis = fiber.analyze();
    println!("L = {:?}", lengths.values());
    println!("Δ = {:?}", lengths.delta());
    println!("ρ = {}", lengths.elasticity()?);
    println!("c = {}", analysis.catenary);
    println!("ℛ = {:?}", analysis.relation_distances.keys().collect::<Vec<_>>());
    Ok(())
}
