//! Minimal zero-sum sequences.
//!
//! The enumerator walks zero-sum free sequences with non-decreasing terms and
//! closes each one with the unique term `-σ(S)` that makes it zero-sum. If
//! `S` is zero-sum free and `σ(S·g) = 0` then `S·g` is minimal, so every atom
//! arises exactly once: from its sorted prefix without the largest term.

use rayon::prelude::*;
use serde::Serialize;

use super::ClassSequence;
use crate::error::Result;
use crate::group::{AbelianGroup, GroupElement, IndexedGroup};

/// All atoms of `B(G₀)` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassAtomTable {
    group: AbelianGroup,
    support: Vec<GroupElement>,
    atoms: Vec<ClassSequence>,
    #[serde(skip)]
    dense: Vec<Vec<u32>>,
}

impl ClassAtomTable {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `G₀` in element order.
    pub fn support(&self) -> &[GroupElement] {
        &self.support
    }

    pub fn atoms(&self) -> &[ClassSequence] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom `i` as a multiplicity vector over [`support`](Self::support).
    pub fn dense(&self, i: usize) -> &[u32] {
        &self.dense[i]
    }

    pub fn dense_atoms(&self) -> &[Vec<u32>] {
        &self.dense
    }

    /// Davenport constant of `G₀`; zero when `G₀` is empty.
    pub fn davenport(&self) -> u64 {
        self.atoms.iter().map(ClassSequence::len).max().unwrap_or(0)
    }

    pub fn position(&self, atom: &ClassSequence) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// Dense multiplicity vector of an arbitrary sequence over `G₀`.
    pub fn to_dense(&self, seq: &ClassSequence) -> Option<Vec<u32>> {
        let mut v = vec![0u32; self.support.len()];
        for (g, k) in seq.iter() {
            let pos = self.support.binary_search(g).ok()?;
            v[pos] = k as u32;
        }
        Some(v)
    }

    pub(crate) fn from_parts(
        group: AbelianGroup,
        support: Vec<GroupElement>,
        atoms: Vec<ClassSequence>,
    ) -> Self {
        let dense = atoms
            .iter()
            .map(|a| {
                let mut v = vec![0u32; support.len()];
                for (g, k) in a.iter() {
                    let pos = support.binary_search(g).expect("atom over support");
                    v[pos] = k as u32;
                }
                v
            })
            .collect();
        ClassAtomTable {
            group,
            support,
            atoms,
            dense,
        }
    }
}

struct Search<'a> {
    ig: &'a IndexedGroup,
    /// group index -> position in G₀ (or usize::MAX)
    position: Vec<usize>,
    /// positions in G₀ -> group index
    support: &'a [usize],
}

impl Search<'_> {
    fn descend(
        &self,
        terms: &mut Vec<usize>,
        sums: &mut Vec<bool>,
        sigma: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *terms.last().expect("descend starts from a nonempty prefix");
        let closing = self.ig.neg(sigma);
        let pos = self.position[closing];
        if pos != usize::MAX && pos >= last {
            let mut atom = terms.clone();
            atom.push(pos);
            out.push(atom);
        }
        let order = self.ig.order();
        for next in last..self.support.len() {
            let h = self.support[next];
            if h == 0 || sums[self.ig.neg(h)] {
                continue;
            }
            let mut grown = sums.clone();
            grown[h] = true;
            for x in 0..order {
                if sums[x] {
                    grown[self.ig.add(x, h)] = true;
                }
            }
            terms.push(next);
            std::mem::swap(sums, &mut grown);
            self.descend(terms, sums, self.ig.add(sigma, h), out);
            std::mem::swap(sums, &mut grown);
            terms.pop();
        }
    }
}

/// Enumerates every minimal zero-sum sequence over `subset`.
///
/// Terms within an atom are non-decreasing in element order; atoms are
/// ordered by length and then lexicographically.
pub fn enumerate_class_atoms(
    group: &AbelianGroup,
    subset: &[GroupElement],
) -> Result<ClassAtomTable> {
    let ig = IndexedGroup::new(group)?;
    let mut support_idx = subset
        .iter()
        .map(|g| group.index_of(g))
        .collect::<Result<Vec<_>>>()?;
    support_idx.sort_unstable();
    support_idx.dedup();
    let mut position = vec![usize::MAX; ig.order()];
    for (pos, &g) in support_idx.iter().enumerate() {
        position[g] = pos;
    }
    let search = Search {
        ig: &ig,
        position,
        support: &support_idx,
    };

    let mut found: Vec<Vec<usize>> = Vec::new();
    if support_idx.first() == Some(&0) {
        found.push(vec![0]);
    }
    let branches: Vec<Vec<Vec<usize>>> = (0..support_idx.len())
        .into_par_iter()
        .filter(|&first| support_idx[first] != 0)
        .map(|first| {
            let h = support_idx[first];
            let mut sums = vec![false; ig.order()];
            sums[h] = true;
            let mut terms = vec![first];
            let mut out = Vec::new();
            search.descend(&mut terms, &mut sums, h, &mut out);
            out
        })
        .collect();
    found.extend(branches.into_iter().flatten());
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let support: Vec<GroupElement> = support_idx.iter().map(|&i| ig.element(i)).collect();
    let atoms = found
        .into_iter()
        .map(|terms| ClassSequence::from_terms(terms.into_iter().map(|p| support[p].clone())))
        .collect();
    Ok(ClassAtomTable::from_parts(group.clone(), support, atoms))
}

/// Minimality test through a dynamic program over `(term count, sub-sum)`.
///
/// `reach[k][s]` records whether some subsequence with exactly `k` terms sums
/// to `s`; the sequence is an atom iff it is zero-sum, nonempty, and zero is
/// not reachable with `1 ≤ k < |S|` terms.
pub fn is_atom(group: &AbelianGroup, seq: &ClassSequence) -> Result<bool> {
    let len = seq.len() as usize;
    if len == 0 || seq.sigma(group)? != group.zero() {
        return Ok(false);
    }
    if len == 1 {
        return Ok(true);
    }
    let ig = IndexedGroup::new(group)?;
    let order = ig.order();
    let mut reach = vec![vec![false; order]; len + 1];
    reach[0][0] = true;
    let mut used = 0usize;
    for (g, mult) in seq.iter() {
        let h = group.index_of(g)?;
        let mult = mult as usize;
        let mut next = vec![vec![false; order]; len + 1];
        for k in 0..=used {
            for (s, _) in reach[k].iter().enumerate().filter(|(_, &r)| r) {
                let mut t = s;
                for c in 0..=mult {
                    next[k + c][t] = true;
                    t = ig.add(t, h);
                }
            }
        }
        used += mult;
        reach = next;
    }
    Ok((1..len).all(|k| !reach[k][0]))
}

/// Maximal atom length over `subset`; zero for the empty subset.
pub fn davenport(group: &AbelianGroup, subset: &[GroupElement]) -> Result<u64> {
    Ok(enumerate_class_atoms(group, subset)?.davenport())
}
