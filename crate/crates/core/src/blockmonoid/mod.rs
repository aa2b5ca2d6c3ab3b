//! Sequences over a finite abelian group, monoids of zero-sum sequences and
//! their labeled refinements.
//!
//! A [`LabeledMonoid`] models a reduced Krull monoid through its prime
//! divisors: every prime label carries a class in `G`, and an element is a
//! [`LabeledSequence`] (a multiset of labels) whose projection to classes sums
//! to zero. With exactly one label per class this is the block monoid
//! `B(G₀)` itself.

mod atoms;
mod lift;

pub use atoms::{davenport, enumerate_class_atoms, is_atom, ClassAtomTable};
pub use lift::{expand_to_labeled, weak_compositions, LabeledAtomTable};

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};

/// A finite multiset of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSequence {
    counts: BTreeMap<GroupElement, u64>,
}

impl ClassSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I>(items: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, u64)>,
    {
        let mut seq = Self::new();
        for (g, k) in items {
            seq.push_n(g, k);
        }
        seq
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = GroupElement>,
    {
        Self::from_counts(terms.into_iter().map(|g| (g, 1)))
    }

    pub fn push_n(&mut self, g: GroupElement, k: u64) {
        if k > 0 {
            *self.counts.entry(g).or_insert(0) += k;
        }
    }

    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn multiplicity(&self, g: &GroupElement) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.counts.keys()
    }

    /// `(element, multiplicity)` pairs in element order.
    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> {
        self.counts.iter().map(|(g, &k)| (g, k))
    }

    pub fn sigma(&self, group: &AbelianGroup) -> Result<GroupElement> {
        let mut acc = group.zero();
        for (g, &k) in &self.counts {
            acc = group.add(&acc, &group.scale(k as i64, g)?)?;
        }
        Ok(acc)
    }

    pub fn minus(&self, group: &AbelianGroup) -> Result<ClassSequence> {
        let mut out = ClassSequence::new();
        for (g, &k) in &self.counts {
            out.push_n(group.negate(g)?, k);
        }
        Ok(out)
    }

    /// `self · other`.
    pub fn concat(&self, other: &ClassSequence) -> ClassSequence {
        let mut out = self.clone();
        for (g, k) in other.iter() {
            out.push_n(g.clone(), k);
        }
        out
    }

    /// True when `other` divides `self` in the free monoid.
    pub fn divides(&self, other: &ClassSequence) -> bool {
        self.iter().all(|(g, k)| other.multiplicity(g) >= k)
    }
}

impl Serialize for ClassSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for (g, k) in &self.counts {
            seq.serialize_element(&(g, k))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ClassSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(GroupElement, u64)> = Vec::deserialize(d)?;
        Ok(ClassSequence::from_counts(pairs))
    }
}

/// A prime label: the `copy`-th prime divisor in class slot `class_slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub class_slot: usize,
    pub copy: u32,
}

impl Label {
    pub fn name(&self) -> String {
        format!("p{}.{}", self.class_slot, self.copy)
    }
}

/// Prime labels with a class map into a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMonoid {
    group: AbelianGroup,
    classes: Vec<GroupElement>,
    counts: Vec<u32>,
    labels: Vec<Label>,
    offsets: Vec<usize>,
}

impl LabeledMonoid {
    /// Builds the monoid from `(class, number of primes)` pairs. Repeated
    /// classes are merged; classes with zero primes are dropped.
    pub fn new(group: AbelianGroup, classes: Vec<(GroupElement, u32)>) -> Result<Self> {
        let mut merged: BTreeMap<GroupElement, u32> = BTreeMap::new();
        for (g, k) in classes {
            if !group.contains(&g) {
                return Err(Error::GroupMismatch(format!("class {g} not in {group}")));
            }
            if k > 0 {
                *merged.entry(g).or_insert(0) += k;
            }
        }
        let mut classes = Vec::with_capacity(merged.len());
        let mut counts = Vec::with_capacity(merged.len());
        let mut labels = Vec::new();
        let mut offsets = Vec::with_capacity(merged.len());
        for (slot, (g, k)) in merged.into_iter().enumerate() {
            offsets.push(labels.len());
            labels.extend((0..k).map(|copy| Label {
                class_slot: slot,
                copy,
            }));
            classes.push(g);
            counts.push(k);
        }
        Ok(LabeledMonoid {
            group,
            classes,
            counts,
            labels,
            offsets,
        })
    }

    /// `B(G)`: one prime in every class.
    pub fn full(group: AbelianGroup) -> Result<Self> {
        let elements = group.enumerate_elements(crate::group::DEFAULT_ELEMENT_CAP)?;
        Self::new(group, elements.into_iter().map(|g| (g, 1)).collect())
    }

    /// `B(G₀)`: one prime in every class of `subset`.
    pub fn block(group: AbelianGroup, subset: &[GroupElement]) -> Result<Self> {
        Self::new(group, subset.iter().map(|g| (g.clone(), 1)).collect())
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The classes containing primes, `G_P`, in element order.
    pub fn classes(&self) -> &[GroupElement] {
        &self.classes
    }

    pub fn prime_counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn class_of(&self, label: usize) -> &GroupElement {
        &self.classes[self.labels[label].class_slot]
    }

    pub fn class_slot(&self, g: &GroupElement) -> Option<usize> {
        self.classes.binary_search(g).ok()
    }

    /// Index of label `copy` in class slot `slot`.
    pub fn label_index(&self, slot: usize, copy: u32) -> Option<usize> {
        if slot < self.counts.len() && copy < self.counts[slot] {
            Some(self.offsets[slot] + copy as usize)
        } else {
            None
        }
    }

    /// Every class of the group contains at least one prime.
    pub fn has_full_support(&self) -> bool {
        self.classes.len() as u64 == self.group.order()
    }

    /// Some nonzero class carries two or more primes.
    pub fn has_multiple_primes(&self) -> bool {
        let zero = self.group.zero();
        self.classes
            .iter()
            .zip(&self.counts)
            .any(|(g, &k)| *g != zero && k > 1)
    }

    pub fn class_atoms(&self) -> Result<ClassAtomTable> {
        enumerate_class_atoms(&self.group, &self.classes)
    }

    pub fn atom_table(&self) -> Result<LabeledAtomTable> {
        LabeledAtomTable::build(self, &self.class_atoms()?)
    }

    /// A labeled sequence from `(label, multiplicity)` pairs.
    pub fn sequence(&self, items: &[(usize, u32)]) -> Result<LabeledSequence> {
        let mut exps = vec![0; self.label_count()];
        for &(label, k) in items {
            if label >= exps.len() {
                return Err(Error::Spec(format!("label {label} out of range")));
            }
            exps[label] += k;
        }
        Ok(LabeledSequence { exponents: exps })
    }
}

/// A multiset of prime labels, stored densely over the labels of its monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabeledSequence {
    exponents: Vec<u32>,
}

impl LabeledSequence {
    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        LabeledSequence { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> u64 {
        self.exponents.iter().map(|&k| k as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Replaces every label by its class.
    pub fn project(&self, monoid: &LabeledMonoid) -> ClassSequence {
        ClassSequence::from_counts(
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(label, &k)| (monoid.class_of(label).clone(), k as u64)),
        )
    }

    pub fn sigma(&self, monoid: &LabeledMonoid) -> Result<GroupElement> {
        self.project(monoid).sigma(monoid.group())
    }

    pub fn is_atom(&self, monoid: &LabeledMonoid) -> Result<bool> {
        is_atom(monoid.group(), &self.project(monoid))
    }

    /// Human-readable form such as `p1.0^2·p1.1`.
    pub fn render(&self, monoid: &LabeledMonoid) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(l, &k)| {
                let name = monoid.labels()[l].name();
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &AbelianGroup, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let c3 = AbelianGroup::cyclic(3).unwrap();
        assert_eq!(ClassSequence::new().sigma(&c3).unwrap(), c3.zero());
        let g = el(&c3, &[1]);
        let cube = ClassSequence::from_counts([(g.clone(), 3)]);
        assert_eq!(cube.sigma(&c3).unwrap(), c3.zero());
        let pair = ClassSequence::from_terms([g, el(&c3, &[2])]);
        assert_eq!(pair.sigma(&c3).unwrap(), c3.zero());
    }

    #[test]
    fn minus_examples() {
        let c4 = AbelianGroup::cyclic(4).unwrap();
        let g = el(&c4, &[1]);
        let s = ClassSequence::from_counts([(g.clone(), 4)]);
        assert_eq!(
            s.minus(&c4).unwrap(),
            ClassSequence::from_counts([(el(&c4, &[3]), 4)])
        );
        assert!(ClassSequence::new().minus(&c4).unwrap().is_empty());
        let sym = ClassSequence::from_terms([g, el(&c4, &[3])]);
        assert_eq!(sym.minus(&c4).unwrap(), sym);
        assert_eq!(s.minus(&c4).unwrap().minus(&c4).unwrap(), s);
    }

    #[test]
    fn json_is_sorted_pairs() {
        let c4 = AbelianGroup::cyclic(4).unwrap();
        let s = ClassSequence::from_counts([(el(&c4, &[3]), 1), (el(&c4, &[1]), 2)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[[[1],2],[[3],1]]");
        let back: ClassSequence = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn labeled_monoid_layout() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let m = LabeledMonoid::new(
            c2.clone(),
            vec![(el(&c2, &[1]), 2), (el(&c2, &[0]), 1), (el(&c2, &[1]), 0)],
        )
        .unwrap();
        assert_eq!(m.classes(), &[el(&c2, &[0]), el(&c2, &[1])]);
        assert_eq!(m.prime_counts(), &[1, 2]);
        assert_eq!(m.label_count(), 3);
        assert_eq!(m.label_index(1, 1), Some(2));
        assert!(m.has_full_support());
        assert!(m.has_multiple_primes());
        let s = m.sequence(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(s.project(&m), ClassSequence::from_counts([(el(&c2, &[1]), 2)]));
        assert_eq!(s.sigma(&m).unwrap(), c2.zero());
        assert_eq!(s.render(&m), "p1.0·p1.1");
    }
}
