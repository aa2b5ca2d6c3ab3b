//! Lifting class-level atoms to atoms over prime labels.

use serde::Serialize;

use super::{ClassAtomTable, ClassSequence, LabeledMonoid, LabeledSequence};
use crate::error::{Error, Result};

/// All ways to write `total` as an ordered sum of `parts` non-negative
/// integers, lexicographically descending (`[2,0], [1,1], [0,2]`).
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every labeled sequence projecting onto `atom`.
///
/// Minimality depends only on the projection, so each result is an atom of
/// the labeled monoid whenever `atom` is an atom of `B(G_P)`.
pub fn expand_to_labeled(
    atom: &ClassSequence,
    monoid: &LabeledMonoid,
) -> Result<Vec<LabeledSequence>> {
    let mut partial = vec![vec![0u32; monoid.label_count()]];
    for (g, mult) in atom.iter() {
        let slot = monoid
            .class_slot(g)
            .ok_or_else(|| Error::Unliftable(g.to_string()))?;
        let count = monoid.prime_counts()[slot] as usize;
        let base = monoid.label_index(slot, 0).expect("slot has a label");
        let splits = weak_compositions(mult as u32, count);
        let mut next = Vec::with_capacity(partial.len() * splits.len());
        for p in &partial {
            for split in &splits {
                let mut q = p.clone();
                for (i, &k) in split.iter().enumerate() {
                    q[base + i] += k;
                }
                next.push(q);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(LabeledSequence::from_exponents)
        .collect())
}

/// Atoms of a labeled monoid, grouped by the class atom they lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledAtomTable {
    atoms: Vec<LabeledSequence>,
    class_atom: Vec<usize>,
    class_table: ClassAtomTable,
}

impl LabeledAtomTable {
    pub fn build(monoid: &LabeledMonoid, class_table: &ClassAtomTable) -> Result<Self> {
        let mut atoms = Vec::new();
        let mut class_atom = Vec::new();
        for (i, a) in class_table.atoms().iter().enumerate() {
            for lifted in expand_to_labeled(a, monoid)? {
                atoms.push(lifted);
                class_atom.push(i);
            }
        }
        Ok(LabeledAtomTable {
            atoms,
            class_atom,
            class_table: class_table.clone(),
        })
    }

    pub fn atoms(&self) -> &[LabeledSequence] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Index of the class atom that atom `i` projects to.
    pub fn class_atom_of(&self, i: usize) -> usize {
        self.class_atom[i]
    }

    pub fn class_table(&self) -> &ClassAtomTable {
        &self.class_table
    }

    pub fn position(&self, atom: &LabeledSequence) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    pub fn dense_atoms(&self) -> Vec<Vec<u32>> {
        self.atoms.iter().map(|a| a.exponents().to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn monoid(n: u64, classes: &[(i64, u32)]) -> LabeledMonoid {
        let g = AbelianGroup::cyclic(n).unwrap();
        let cls = classes
            .iter()
            .map(|&(c, k)| (g.element(&[c]).unwrap(), k))
            .collect();
        LabeledMonoid::new(g, cls).unwrap()
    }

    fn cls(m: &LabeledMonoid, items: &[(i64, u64)]) -> ClassSequence {
        ClassSequence::from_counts(
            items
                .iter()
                .map(|&(c, k)| (m.group().element(&[c]).unwrap(), k)),
        )
    }

    #[test]
    fn single_label_lifts_uniquely() {
        let m = monoid(2, &[(1, 1)]);
        let lifts = expand_to_labeled(&cls(&m, &[(1, 2)]), &m).unwrap();
        assert_eq!(lifts, vec![LabeledSequence::from_exponents(vec![2])]);
    }

    #[test]
    fn two_labels_in_c2() {
        let m = monoid(2, &[(1, 2)]);
        let lifts = expand_to_labeled(&cls(&m, &[(1, 2)]), &m).unwrap();
        let exps: Vec<_> = lifts.iter().map(|l| l.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn two_labels_in_c3() {
        let m = monoid(3, &[(1, 2)]);
        let lifts = expand_to_labeled(&cls(&m, &[(1, 3)]), &m).unwrap();
        let exps: Vec<_> = lifts.iter().map(|l| l.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        for l in &lifts {
            assert!(l.is_atom(&m).unwrap());
        }
    }

    #[test]
    fn missing_class_is_unliftable() {
        let m = monoid(3, &[(1, 1)]);
        let err = expand_to_labeled(&cls(&m, &[(1, 1), (2, 1)]), &m).unwrap_err();
        assert!(matches!(err, Error::Unliftable(_)));
    }

    #[test]
    fn stars_and_bars_count() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let m = monoid(6, &[(1, 3), (2, 2), (3, 1), (5, 4)]);
        let table = m.class_atoms().unwrap();
        for a in table.atoms() {
            let expected: u64 = a
                .iter()
                .map(|(g, k)| {
                    let c = m.prime_counts()[m.class_slot(g).unwrap()] as u64;
                    binom(k + c - 1, c - 1)
                })
                .product();
            assert_eq!(expand_to_labeled(a, &m).unwrap().len() as u64, expected);
        }
    }
}
