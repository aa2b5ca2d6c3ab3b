//! Finite abelian groups in invariant-factor form.
//!
//! A group `C_{n_1} ⊕ … ⊕ C_{n_r}` with `1 < n_1 | n_2 | … | n_r` is stored as
//! its chain of invariant factors; elements are dense residue vectors. The
//! lexicographic order on residue vectors coincides with the mixed-radix
//! index used by [`IndexedGroup`], which the enumerators rely on.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order the element enumerator accepts by default.
pub const DEFAULT_ELEMENT_CAP: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Builds an element from raw coordinates without reducing them.
    pub fn from_coords(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn prime_power_parts(mut n: u64) -> Vec<(u64, u32)> {
    let mut parts = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            parts.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        parts.push((n, 1));
    }
    parts
}

impl AbelianGroup {
    /// Canonical invariant-factor form of `Z_{m_1} ⊕ … ⊕ Z_{m_k}`.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidModulus(bad));
        }
        // prime -> exponents of every primary component
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in moduli {
            for (p, e) in prime_power_parts(m) {
                primary.entry(p).or_default().push(e);
            }
        }
        let rank = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in exps.into_iter().enumerate() {
                // largest powers go to the last invariant factor
                factors[rank - 1 - slot] *= p.pow(e);
            }
        }
        Ok(AbelianGroup {
            invariant_factors: factors,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    /// Parses a comma-separated list of moduli such as `"2,2,4"`.
    /// The empty string and `"1"` denote the trivial group.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "1" {
            return Ok(Self::trivial());
        }
        let moduli = spec
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Spec(format!("bad modulus {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&moduli)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// True when the order is a prime power (the trivial group included).
    pub fn is_p_group(&self) -> bool {
        prime_power_parts(self.order()).len() <= 1
    }

    /// `1 + Σ (n_i - 1)`.
    pub fn d_star(&self) -> u64 {
        1 + self.invariant_factors.iter().map(|n| n - 1).sum::<u64>()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords.len() == self.rank()
            && a.coords.iter().zip(&self.invariant_factors).all(|(c, n)| c < n)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "{a} is not an element of {self}"
            )))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.invariant_factors)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        })
    }

    /// `k · a` for any integer `k`.
    pub fn scale(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &n)| {
                    let n = n as i128;
                    ((k as i128 * x as i128).rem_euclid(n)) as u64
                })
                .collect(),
        })
    }

    /// Least `k ≥ 1` with `k · a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        Ok(a.coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &n)| n / num_integer::gcd(x, n))
            .fold(1, num_integer::lcm))
    }

    /// The standard generators `e_1, …, e_r` with `ord(e_i) = n_i`.
    pub fn canonical_basis(&self) -> Vec<GroupElement> {
        (0..self.rank())
            .map(|i| {
                let mut coords = vec![0; self.rank()];
                coords[i] = 1;
                GroupElement { coords }
            })
            .collect()
    }

    /// All elements in lexicographic coordinate order.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapExceeded(format!(
                "group of order {order} exceeds element cap {cap}"
            )));
        }
        Ok((0..order as usize).map(|i| self.element_at(i)).collect())
    }

    /// Mixed-radix index of `a`; agrees with the lexicographic order.
    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a.coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize))
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (slot, &n) in coords.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        GroupElement { coords }
    }

    /// Parses an element written as comma-separated residues, e.g. `"1,3"`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let coords: Vec<i64> = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Spec(format!("bad residue {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        self.element(&coords)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "C_1");
        }
        for (i, n) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "C_{n}")?;
        }
        Ok(())
    }
}

/// Lists one representative of every isomorphism class of abelian groups of
/// the given order, in invariant-factor form.
pub fn groups_of_order(order: u64) -> Vec<AbelianGroup> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    if order == 1 {
        return vec![AbelianGroup::trivial()];
    }
    let mut groups = vec![Vec::<u64>::new()];
    for (p, e) in prime_power_parts(order) {
        let mut next = Vec::new();
        for moduli in &groups {
            for part in partitions(e, e) {
                let mut m = moduli.clone();
                m.extend(part.iter().map(|&k| p.pow(k)));
                next.push(m);
            }
        }
        groups = next;
    }
    let mut out: Vec<AbelianGroup> = groups
        .iter()
        .map(|m| AbelianGroup::new(m).expect("prime powers are valid moduli"))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Index-based view of a finite group with precomputed addition and negation
/// tables, used by the hot loops of the enumerators.
#[derive(Debug, Clone)]
pub struct IndexedGroup {
    group: AbelianGroup,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// Largest order for which an [`IndexedGroup`] is built.
pub const INDEXED_GROUP_CAP: u64 = 1024;

impl IndexedGroup {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        let elements = group.enumerate_elements(INDEXED_GROUP_CAP)?;
        let order = elements.len();
        let mut add = vec![0u32; order * order];
        let mut neg = vec![0u32; order];
        for (i, a) in elements.iter().enumerate() {
            neg[i] = group.index_of(&group.negate(a)?)? as u32;
            for (j, b) in elements.iter().enumerate() {
                add[i * order + j] = group.index_of(&group.add(a, b)?)? as u32;
            }
        }
        Ok(IndexedGroup {
            group: group.clone(),
            order,
            add,
            neg,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn element(&self, index: usize) -> GroupElement {
        self.group.element_at(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(moduli: &[u64]) -> AbelianGroup {
        AbelianGroup::new(moduli).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g(&[]).order(), 1);
        assert!(g(&[]).is_trivial());
        assert_eq!(g(&[2, 2, 4]).invariant_factors(), &[2, 2, 4]);
        assert_eq!(g(&[2, 2, 4]).order(), 16);
        assert_eq!(g(&[6, 4]).invariant_factors(), &[2, 12]);
        assert_eq!(g(&[4, 2, 2]).invariant_factors(), &[2, 2, 4]);
        assert_eq!(g(&[3, 5]).invariant_factors(), &[15]);
        assert!(matches!(
            AbelianGroup::new(&[4, 1]),
            Err(Error::InvalidModulus(1))
        ));
    }

    /// Brute-force oracle for `[6,4] -> (2,12)`: count elements of each order
    /// in the direct product Z_6 × Z_4 and compare with Z_2 × Z_12.
    #[test]
    fn six_four_matches_order_statistics() {
        let mut product_orders = BTreeMap::new();
        for a in 0..6u64 {
            for b in 0..4u64 {
                let oa = 6 / num_integer::gcd(a, 6);
                let ob = 4 / num_integer::gcd(b, 4);
                *product_orders.entry(num_integer::lcm(oa, ob)).or_insert(0) += 1;
            }
        }
        let canon = g(&[6, 4]);
        let mut canon_orders = BTreeMap::new();
        for e in canon.enumerate_elements(100).unwrap() {
            *canon_orders.entry(canon.element_order(&e).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(product_orders, canon_orders);
    }

    #[test]
    fn arithmetic_examples() {
        let c4 = g(&[4]);
        let a = c4.element(&[3]).unwrap();
        let b = c4.element(&[2]).unwrap();
        assert_eq!(c4.add(&a, &b).unwrap().coords(), &[1]);
        assert_eq!(c4.negate(&c4.zero()).unwrap(), c4.zero());

        let c24 = g(&[2, 4]);
        let x = c24.element(&[1, 3]).unwrap();
        let y = c24.element(&[1, 1]).unwrap();
        assert_eq!(c24.add(&x, &y).unwrap(), c24.zero());
        assert!(matches!(c4.add(&a, &x), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn orders() {
        let c5 = g(&[5]);
        assert_eq!(c5.element_order(&c5.zero()).unwrap(), 1);
        assert_eq!(c5.element_order(&c5.element(&[1]).unwrap()).unwrap(), 5);
        let c24 = g(&[2, 4]);
        // brute force multiples of (1,2)
        let e = c24.element(&[1, 2]).unwrap();
        let mut k = 1;
        let mut acc = e.clone();
        while acc != c24.zero() {
            acc = c24.add(&acc, &e).unwrap();
            k += 1;
        }
        assert_eq!(k, 2);
        assert_eq!(c24.element_order(&e).unwrap(), 2);
    }

    #[test]
    fn enumeration_and_basis() {
        assert_eq!(g(&[]).enumerate_elements(10).unwrap(), vec![g(&[]).zero()]);
        let c3 = g(&[3]);
        let els = c3.enumerate_elements(10).unwrap();
        let coords: Vec<_> = els.iter().map(|e| e.coords()[0]).collect();
        assert_eq!(coords, vec![0, 1, 2]);
        assert_eq!(g(&[2, 2]).enumerate_elements(10).unwrap().len(), 4);
        assert!(matches!(
            g(&[2, 8]).enumerate_elements(8),
            Err(Error::CapExceeded(_))
        ));

        let c24 = g(&[2, 4]);
        let basis = c24.canonical_basis();
        assert_eq!(basis[0].coords(), &[1, 0]);
        assert_eq!(basis[1].coords(), &[0, 1]);
        assert_eq!(c24.element_order(&basis[1]).unwrap(), 4);
        assert!(g(&[]).canonical_basis().is_empty());
        assert_eq!(g(&[9]).canonical_basis()[0].coords(), &[1]);
    }

    #[test]
    fn d_star_values() {
        assert_eq!(g(&[5]).d_star(), 5);
        assert_eq!(g(&[2, 2]).d_star(), 3);
        assert_eq!(g(&[2, 6]).d_star(), 7);
        assert_eq!(g(&[]).d_star(), 1);
    }

    #[test]
    fn group_lists() {
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let grp = g(&[2, 6]);
        let els = grp.enumerate_elements(100).unwrap();
        let mut sorted = els.clone();
        sorted.sort();
        assert_eq!(els, sorted);
        for (i, e) in els.iter().enumerate() {
            assert_eq!(grp.index_of(e).unwrap(), i);
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for order in 1..=16 {
            for grp in groups_of_order(order) {
                let els = grp.enumerate_elements(16).unwrap();
                let z = grp.zero();
                for a in &els {
                    assert_eq!(grp.add(a, &z).unwrap(), *a);
                    assert_eq!(grp.add(a, &grp.negate(a).unwrap()).unwrap(), z);
                    assert_eq!(order % grp.element_order(a).unwrap(), 0);
                    for b in &els {
                        let ab = grp.add(a, b).unwrap();
                        assert_eq!(ab, grp.add(b, a).unwrap());
                        for c in &els {
                            assert_eq!(
                                grp.add(&ab, c).unwrap(),
                                grp.add(a, &grp.add(b, c).unwrap()).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn canonical_form_is_fixpoint(moduli in prop::collection::vec(2u64..40, 0..4)) {
                let grp = AbelianGroup::new(&moduli).unwrap();
                let again = AbelianGroup::new(grp.invariant_factors()).unwrap();
                prop_assert_eq!(&grp, &again);
                let order: u64 = moduli.iter().product();
                prop_assert_eq!(grp.order(), order);
                for w in grp.invariant_factors().windows(2) {
                    prop_assert_eq!(w[1] % w[0], 0);
                }
            }

            #[test]
            fn d_star_permutation_invariant(mut moduli in prop::collection::vec(2u64..30, 1..4)) {
                let a = AbelianGroup::new(&moduli).unwrap().d_star();
                moduli.reverse();
                let b = AbelianGroup::new(&moduli).unwrap().d_star();
                prop_assert_eq!(a, b);
            }
        }
    }
}
