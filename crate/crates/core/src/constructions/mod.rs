//! Monoids with prescribed invariants.

mod cases;
mod product;

use std::collections::BTreeSet;

pub use cases::*;
pub use product::*;

use crate::blockmonoid::LabeledMonoid;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;

/// `B({g, −g})` over `C_d`: atoms `g^d`, `(−g)^d` and `g(−g)`.
pub fn cyclic_pm_monoid(d: u64) -> Result<LabeledMonoid> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("order {d} must be at least 3")));
    }
    let group = AbelianGroup::cyclic(d)?;
    let g = group.element(&[1])?;
    let minus = group.negate(&g)?;
    LabeledMonoid::block(group, &[g, minus])
}

/// `C_2` with two primes `p, q` in the nonzero class: atoms `p², pq, q²`.
pub fn two_prime_c2_monoid() -> LabeledMonoid {
    let group = AbelianGroup::cyclic(2).expect("C_2");
    let g = group.element(&[1]).expect("generator");
    LabeledMonoid::new(group, vec![(g, 2)]).expect("valid classes")
}

/// A product with `ℛ = Ca = set` and `ℸ* = set \ {2}`: one
/// [`cyclic_pm_monoid`] per `d ≥ 3`, plus [`two_prime_c2_monoid`] when `2 ∈ set`.
pub fn realize_catenary_set(set: &BTreeSet<u32>) -> Result<ProductMonoid> {
    match set.first() {
        None => return Err(Error::InvalidParameter("the set must be nonempty".into())),
        Some(&m) if m < 2 => {
            return Err(Error::InvalidParameter(format!("{m} is below 2")));
        }
        _ => {}
    }
    let mut components = Vec::new();
    if set.contains(&2) {
        components.push(Component::Labeled(two_prime_c2_monoid()));
    }
    for &d in set.range(3..) {
        components.push(Component::Labeled(cyclic_pm_monoid(d as u64)?));
    }
    ProductMonoid::new(components)
}

/// `G₀ = {e₀, e₁, …, e_r} ⊂ C_n^r` with `e₀ = −(e₁ + ⋯ + e_r)`.
/// The atoms are `W = e₀⋯e_r` and `U_i = e_i^n`.
pub fn example_231(r: usize, n: u64) -> Result<LabeledMonoid> {
    if r < 2 || n < 3 {
        return Err(Error::InvalidParameter(format!(
            "need r ≥ 2 and n ≥ 3, got r = {r}, n = {n}"
        )));
    }
    let group = AbelianGroup::new(&vec![n; r])?;
    let basis = group.canonical_basis();
    let mut sum = group.zero();
    for e in &basis {
        sum = group.add(&sum, e)?;
    }
    let mut classes = vec![group.negate(&sum)?];
    classes.extend(basis);
    LabeledMonoid::block(group, &classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockmonoid::LabeledSequence;
    use crate::factorization::LabeledFactorizer;
    use crate::invariants::{daleth_star, scan, FiberSource};
    use crate::presented::make_example_233;
    use proptest::prelude::*;

    #[test]
    fn pm_atoms() {
        for d in 3..=6 {
            let m = cyclic_pm_monoid(d).unwrap();
            let table = m.class_atoms().unwrap();
            assert_eq!(table.len(), 3);
            let lens: BTreeSet<u64> = table.atoms().iter().map(|a| a.len()).collect();
            assert_eq!(lens, BTreeSet::from([2, d]));
        }
        assert!(cyclic_pm_monoid(2).is_err());
        let m = cyclic_pm_monoid(4).unwrap();
        let r = scan(&m, 8).unwrap();
        assert_eq!(r.ca_observed(), BTreeSet::from([4]));
        assert_eq!(r.r_observed(), BTreeSet::from([4]));
        assert_eq!(daleth_star(&m).unwrap().values, BTreeSet::from([4]));
    }

    #[test]
    fn two_prime_c2() {
        let m = two_prime_c2_monoid();
        let f = LabeledFactorizer::new(&m).unwrap();
        assert_eq!(f.table().len(), 3);
        let fiber = f.factorizations(&LabeledSequence::from_exponents(vec![2, 2])).unwrap();
        assert_eq!(fiber.len(), 2);
        assert_eq!(fiber.catenary(), 2);
        assert!(daleth_star(&m).unwrap().values.is_empty());
        assert_eq!(scan(&m, 8).unwrap().ca_observed(), BTreeSet::from([2]));
    }

    #[test]
    fn realization() {
        let p = realize_catenary_set(&BTreeSet::from([2, 3, 5])).unwrap();
        assert_eq!(p.components().len(), 3);
        let report = product_invariants(&p, 10).unwrap();
        assert!(report.union_violations.is_empty(), "{:?}", report.union_violations);
        assert_eq!(report.daleth.values, BTreeSet::from([3, 5]));
        assert_eq!(report.scan.ca_observed(), BTreeSet::from([2, 3, 5]));
        assert_eq!(report.scan.r_observed(), BTreeSet::from([2, 3, 5]));
        assert_eq!(realize_catenary_set(&BTreeSet::from([4])).unwrap().components().len(), 1);
        assert!(realize_catenary_set(&BTreeSet::from([1])).is_err());
        assert!(realize_catenary_set(&BTreeSet::new()).is_err());
    }

    /// An element whose second coordinate is the unit has the fiber of its
    /// first coordinate.
    #[test]
    fn unit_component() {
        let p = ProductMonoid::new(vec![
            Component::Labeled(cyclic_pm_monoid(4).unwrap()),
            Component::Presented(make_example_233()),
        ])
        .unwrap();
        let a1 = vec![4u32, 4];
        let element = p.element(&[a1.clone(), vec![0; 6]]).unwrap();
        let product_fiber = p.fiber(&element).unwrap();
        let f = LabeledFactorizer::new(&cyclic_pm_monoid(4).unwrap()).unwrap();
        let component = f.factorizations(&LabeledSequence::from_exponents(a1)).unwrap();
        assert_eq!(product_fiber.members(), component.members());
        assert_eq!(product_fiber.catenary(), component.catenary());
        let report = product_invariants(&p, 8).unwrap();
        assert!(report.union_violations.is_empty(), "{:?}", report.union_violations);
        assert_eq!(report.scan.r_observed(), BTreeSet::from([3, 4]));
    }

    #[test]
    fn example_231_atoms() {
        for (r, n) in [(2, 3), (2, 4), (3, 4), (2, 5), (3, 3)] {
            assert_eq!(example_231(r, n).unwrap().class_atoms().unwrap().len(), r + 2);
        }
        let m = example_231(2, 3).unwrap();
        assert!(daleth_star(&m).unwrap().values.is_empty());
        let r = scan(&m, 9).unwrap();
        assert!(r.delta_observed().is_empty());
        assert!(!r.ca_observed().is_empty());
        assert!(example_231(1, 3).is_err() && example_231(2, 2).is_err());
    }

    /// `Z(W⁴) = {W⁴, U₀U₁U₂}` for `(r, n) = (2, 4)`, checked against an
    /// exhaustive search over exponent vectors of the four atoms.
    #[test]
    fn example_231_delta() {
        let m = example_231(2, 4).unwrap();
        let f = LabeledFactorizer::new(&m).unwrap();
        let atoms = f.table().dense_atoms();
        let w4 = LabeledSequence::from_exponents(vec![4, 4, 4]);
        let mut brute = Vec::new();
        for x in 0..=4u32 {
            for y in 0..=1u32 {
                for z in 0..=1u32 {
                    for t in 0..=1u32 {
                        let counts = [x, y, z, t];
                        let prod: Vec<u32> = (0..3)
                            .map(|i| atoms.iter().zip(&counts).map(|(a, &c)| a[i] * c).sum())
                            .collect();
                        if prod == w4.exponents() {
                            brute.push(counts.iter().sum::<u32>());
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(brute, vec![3, 4]);
        let fiber = f.factorizations(&w4).unwrap();
        assert_eq!(fiber.length_set().values(), &BTreeSet::from([3, 4]));
        assert!(scan(&m, 12).unwrap().delta_observed().contains(&1));
    }

    #[test]
    fn all_cases_replay() {
        for case in Case::ALL {
            let replay = prop34_witness(case, CaseParams::default()).unwrap().replay().unwrap();
            assert!(replay.passed, "{replay:?}");
        }
        let big = CaseParams { m: Some(3), rank: None };
        for case in [Case::C3, Case::C4] {
            assert!(prop34_witness(case, big).unwrap().replay().unwrap().passed);
        }
        let rank = CaseParams { m: None, rank: Some(4) };
        assert!(prop34_witness(Case::C1_2, rank).unwrap().replay().unwrap().passed);
        assert!(prop34_witness(Case::C2_2, CaseParams { m: None, rank: Some(3) })
            .unwrap()
            .replay()
            .unwrap()
            .passed);
    }

    #[test]
    fn case_parameter_errors() {
        let bad_m = CaseParams { m: Some(1), rank: None };
        assert!(prop34_witness(Case::C3, bad_m).is_err());
        let stray = CaseParams { m: Some(2), rank: None };
        assert!(prop34_witness(Case::C1_1, stray).is_err());
        let low_rank = CaseParams { m: None, rank: Some(2) };
        assert!(prop34_witness(Case::C1_2, low_rank).is_err());
        assert!("5.1".parse::<Case>().is_err());
        assert_eq!("2.2".parse::<Case>().unwrap(), Case::C2_2);
    }

    fn small_component() -> impl Strategy<Value = Component> {
        prop_oneof![
            (3u64..=5).prop_map(|d| Component::Labeled(cyclic_pm_monoid(d).unwrap())),
            Just(Component::Labeled(two_prime_c2_monoid())),
            Just(Component::Labeled(
                LabeledMonoid::full(AbelianGroup::cyclic(3).unwrap()).unwrap()
            )),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn union_laws(a in small_component(), b in small_component()) {
            let p = ProductMonoid::new(vec![a, b]).unwrap();
            let report = product_invariants(&p, 6).unwrap();
            prop_assert!(report.union_violations.is_empty(), "{:?}", report.union_violations);
            prop_assert!(report.scan.violations.is_empty());
        }
    }
}
