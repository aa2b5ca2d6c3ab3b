//! Factorizations, fibers `Z(a)` and their distance structure.
//!
//! Atoms live in a free basis (prime labels for block monoids, generators for
//! presented monoids) as dense exponent vectors. A [`Factorization`] is a
//! multiset of atom indices; a [`FiberSet`] is the complete set of
//! factorizations of one element together with its pairwise distances.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::blockmonoid::{LabeledAtomTable, LabeledMonoid, LabeledSequence};
use crate::error::{Error, Result};

/// A multiset of atom indices, kept as sorted `(atom, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factorization {
    parts: Vec<(usize, u32)>,
}

impl Factorization {
    pub fn new(mut parts: Vec<(usize, u32)>) -> Self {
        parts.retain(|&(_, k)| k > 0);
        parts.sort_unstable();
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(parts.len());
        for (a, k) in parts {
            match merged.last_mut() {
                Some((b, m)) if *b == a => *m += k,
                _ => merged.push((a, k)),
            }
        }
        Factorization { parts: merged }
    }

    /// From a list of atom indices with repetition.
    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Self {
        Self::new(atoms.into_iter().map(|a| (a, 1)).collect())
    }

    pub fn parts(&self) -> &[(usize, u32)] {
        &self.parts
    }

    /// `|z|`, the number of atoms counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.parts.iter().map(|&(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, atom: usize) -> u32 {
        self.parts
            .binary_search_by_key(&atom, |&(a, _)| a)
            .map(|i| self.parts[i].1)
            .unwrap_or(0)
    }

    /// Product of the atoms as an exponent vector over the basis.
    pub fn product(&self, atoms: &[Vec<u32>], basis_len: usize) -> Vec<u32> {
        let mut v = vec![0u32; basis_len];
        for &(a, k) in &self.parts {
            for (slot, &e) in v.iter_mut().zip(&atoms[a]) {
                *slot += k * e;
            }
        }
        v
    }

    /// Shifts every atom index by `offset` (used for direct products).
    pub fn shifted(&self, offset: usize) -> Self {
        Factorization {
            parts: self.parts.iter().map(|&(a, k)| (a + offset, k)).collect(),
        }
    }

    pub fn concat(&self, other: &Factorization) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Factorization::new(parts)
    }
}

/// `d(z, z')`: cancel the common part and take the longer remainder.
pub fn distance(z: &Factorization, w: &Factorization) -> u32 {
    let (mut left, mut right) = (0u32, 0u32);
    let (a, b) = (&z.parts, &w.parts);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            left += a[i].1;
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            right += b[j].1;
            j += 1;
        } else {
            let (x, y) = (a[i].1, b[j].1);
            if x > y {
                left += x - y;
            } else {
                right += y - x;
            }
            i += 1;
            j += 1;
        }
    }
    left.max(right)
}

/// Sorted set of factorization lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthSet(BTreeSet<u32>);

impl LengthSet {
    pub fn new<I: IntoIterator<Item = u32>>(lengths: I) -> Self {
        LengthSet(lengths.into_iter().collect())
    }

    pub fn values(&self) -> &BTreeSet<u32> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: u32) -> bool {
        self.0.contains(&l)
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Successive gaps of the sorted set.
    pub fn delta(&self) -> BTreeSet<u32> {
        let v: Vec<u32> = self.0.iter().copied().collect();
        v.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `max L / min L` as an exact rational, with `ρ({0}) = 1`.
    pub fn elasticity(&self) -> Result<Ratio<u64>> {
        let (lo, hi) = match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::EmptyLengthSet),
        };
        if lo == 0 {
            return if hi == 0 {
                Ok(Ratio::from_integer(1))
            } else {
                Err(Error::InvalidParameter(
                    "length set mixes 0 with positive lengths".into(),
                ))
            };
        }
        Ok(Ratio::new(hi as u64, lo as u64))
    }

    /// `min(L \ {2})`, the quantity collected by ℸ*.
    pub fn min_beyond_two(&self) -> Option<u32> {
        self.0.iter().copied().find(|&l| l != 2)
    }
}

/// Successive gaps of a set of lengths.
pub fn delta_set(lengths: &LengthSet) -> BTreeSet<u32> {
    lengths.delta()
}

pub fn elasticity(lengths: &LengthSet) -> Result<Ratio<u64>> {
    lengths.elasticity()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Catenary degree and minimal-relation distances of one fiber, each with
/// the first witnessing pair in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAnalysis {
    pub catenary: u32,
    pub catenary_pair: Option<(usize, usize)>,
    pub relation_distances: BTreeMap<u32, (usize, usize)>,
}

/// The complete set `Z(a)` of factorizations of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSet {
    element: Vec<u32>,
    members: Vec<Factorization>,
    dist: Vec<u32>,
}

impl FiberSet {
    /// Wraps an already complete list of factorizations. Members are sorted
    /// and deduplicated; the distance matrix is filled eagerly.
    pub fn new(element: Vec<u32>, mut members: Vec<Factorization>) -> Self {
        members.sort();
        members.dedup();
        let f = members.len();
        let mut dist = Vec::with_capacity(f * f.saturating_sub(1) / 2);
        for i in 0..f {
            for j in i + 1..f {
                dist.push(distance(&members[i], &members[j]));
            }
        }
        FiberSet {
            element,
            members,
            dist,
        }
    }

    pub fn element(&self) -> &[u32] {
        &self.element
    }

    pub fn members(&self) -> &[Factorization] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, z: &Factorization) -> Option<usize> {
        self.members.binary_search(z).ok()
    }

    /// Distance between members `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let (i, j) = (i.min(j), i.max(j));
        let f = self.members.len();
        self.dist[i * (2 * f - i - 1) / 2 + (j - i - 1)]
    }

    pub fn length_set(&self) -> LengthSet {
        LengthSet::new(self.members.iter().map(Factorization::len))
    }

    /// Whether `z` and `w` are joined by an `n`-chain inside the fiber.
    pub fn chain_exists(&self, z: &Factorization, w: &Factorization, n: u32) -> Result<bool> {
        let a = self.index_of(z).ok_or(Error::NotInFiber)?;
        let b = self.index_of(w).ok_or(Error::NotInFiber)?;
        Ok(self.connected_below(a, b, n + 1))
    }

    /// Connectivity of `a` and `b` using only edges of weight `< limit`.
    pub fn connected_below(&self, a: usize, b: usize, limit: u32) -> bool {
        if a == b {
            return true;
        }
        let f = self.members.len();
        let mut seen = vec![false; f];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(x) = queue.pop_front() {
            for (y, seen_y) in seen.iter_mut().enumerate() {
                if !*seen_y && self.distance(x, y) < limit {
                    if y == b {
                        return true;
                    }
                    *seen_y = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Kruskal over distance buckets. A distance `d` is a minimal-relation
    /// distance exactly when some pair at distance `d` is still disconnected
    /// after all edges shorter than `d` are merged; the last merging weight
    /// is the catenary degree.
    pub fn analyze(&self) -> FiberAnalysis {
        let f = self.members.len();
        let mut analysis = FiberAnalysis {
            catenary: 0,
            catenary_pair: None,
            relation_distances: BTreeMap::new(),
        };
        if f <= 1 {
            return analysis;
        }
        let max_w = self.dist.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(u32, u32)>> = vec![Vec::new(); max_w + 1];
        let mut k = 0;
        for i in 0..f {
            for j in i + 1..f {
                buckets[self.dist[k] as usize].push((i as u32, j as u32));
                k += 1;
            }
        }
        let mut sets = DisjointSets::new(f);
        let mut components = f;
        for (w, edges) in buckets.iter().enumerate() {
            if edges.is_empty() {
                continue;
            }
            for &(i, j) in edges {
                if sets.find(i as usize) != sets.find(j as usize) {
                    analysis
                        .relation_distances
                        .entry(w as u32)
                        .or_insert((i as usize, j as usize));
                }
            }
            for &(i, j) in edges {
                if sets.union(i as usize, j as usize) {
                    components -= 1;
                    analysis.catenary = w as u32;
                    analysis.catenary_pair = Some((i as usize, j as usize));
                }
            }
            if components == 1 {
                break;
            }
        }
        analysis
    }

    /// `c(a)`: zero for a single factorization, otherwise the bottleneck of a
    /// minimum spanning tree of the distance graph.
    pub fn catenary(&self) -> u32 {
        self.analyze().catenary
    }

    pub fn relation_distances(&self) -> BTreeSet<u32> {
        self.analyze().relation_distances.into_keys().collect()
    }
}

pub fn chain_exists(fiber: &FiberSet, z: &Factorization, w: &Factorization, n: u32) -> Result<bool> {
    fiber.chain_exists(z, w, n)
}

pub fn catenary_element(fiber: &FiberSet) -> u32 {
    fiber.catenary()
}

pub fn relation_distances(fiber: &FiberSet) -> BTreeSet<u32> {
    fiber.relation_distances()
}

/// Exhaustive factorization over a fixed list of atoms in a free basis.
#[derive(Debug, Clone)]
pub struct FactorizationEngine {
    basis_len: usize,
    atoms: Vec<Vec<u32>>,
}

struct Walk<'a> {
    atoms: &'a [Vec<u32>],
    local: Vec<usize>,
    containing: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    out: Vec<Factorization>,
    cap: usize,
    overflow: bool,
}

impl Walk<'_> {
    fn run(&mut self, rest: &mut [u32], phase: usize, start: usize) {
        if self.overflow {
            return;
        }
        let x = match rest.iter().position(|&e| e > 0) {
            Some(x) => x,
            None => {
                if self.out.len() >= self.cap {
                    self.overflow = true;
                    return;
                }
                self.out
                    .push(Factorization::from_atoms(self.chosen.iter().copied()));
                return;
            }
        };
        let start = if x == phase { start } else { 0 };
        for pos in start..self.containing[x].len() {
            let a = self.local[self.containing[x][pos]];
            let atom = &self.atoms[a];
            if atom.iter().zip(rest.iter()).any(|(&e, &r)| e > r) {
                continue;
            }
            for (r, &e) in rest.iter_mut().zip(atom) {
                *r -= e;
            }
            self.chosen.push(a);
            self.run(rest, x, pos);
            self.chosen.pop();
            for (r, &e) in rest.iter_mut().zip(atom) {
                *r += e;
            }
        }
    }
}

/// Default bound on the number of factorizations materialized per element.
pub const DEFAULT_FIBER_CAP: usize = 200_000;

impl FactorizationEngine {
    pub fn new(basis_len: usize, atoms: Vec<Vec<u32>>) -> Self {
        debug_assert!(atoms.iter().all(|a| a.len() == basis_len));
        FactorizationEngine { basis_len, atoms }
    }

    pub fn basis_len(&self) -> usize {
        self.basis_len
    }

    pub fn atoms(&self) -> &[Vec<u32>] {
        &self.atoms
    }

    /// Indices of the atoms dividing `element`.
    pub fn dividing(&self, element: &[u32]) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&a| self.atoms[a].iter().zip(element).all(|(&e, &r)| e <= r))
            .collect()
    }

    /// All factorizations of `element`, each found exactly once: for the
    /// first basis index `x` still present, the atoms containing `x` are
    /// chosen together in non-decreasing order before moving on.
    pub fn factorizations(&self, element: &[u32], cap: usize) -> Result<FiberSet> {
        let local = self.dividing(element);
        let mut containing = vec![Vec::new(); self.basis_len];
        for (pos, &a) in local.iter().enumerate() {
            for (x, &e) in self.atoms[a].iter().enumerate() {
                if e > 0 {
                    containing[x].push(pos);
                }
            }
        }
        let mut walk = Walk {
            atoms: &self.atoms,
            local,
            containing,
            chosen: Vec::new(),
            out: Vec::new(),
            cap,
            overflow: false,
        };
        let mut rest = element.to_vec();
        walk.run(&mut rest, usize::MAX, 0);
        if walk.overflow {
            return Err(Error::CapExceeded(format!(
                "element has more than {cap} factorizations"
            )));
        }
        for z in &walk.out {
            debug_assert_eq!(z.product(&self.atoms, self.basis_len), element);
        }
        Ok(FiberSet::new(element.to_vec(), walk.out))
    }
}

/// Factorization engine bound to a labeled monoid and its atom table.
#[derive(Debug, Clone)]
pub struct LabeledFactorizer {
    monoid: LabeledMonoid,
    table: LabeledAtomTable,
    engine: FactorizationEngine,
}

impl LabeledFactorizer {
    pub fn new(monoid: &LabeledMonoid) -> Result<Self> {
        let table = monoid.atom_table()?;
        Ok(Self::with_table(monoid, table))
    }

    pub fn with_table(monoid: &LabeledMonoid, table: LabeledAtomTable) -> Self {
        let engine = FactorizationEngine::new(monoid.label_count(), table.dense_atoms());
        LabeledFactorizer {
            monoid: monoid.clone(),
            table,
            engine,
        }
    }

    pub fn monoid(&self) -> &LabeledMonoid {
        &self.monoid
    }

    pub fn table(&self) -> &LabeledAtomTable {
        &self.table
    }

    pub fn engine(&self) -> &FactorizationEngine {
        &self.engine
    }

    /// `Z(a)`; rejects sequences that are not zero-sum.
    pub fn factorizations(&self, a: &LabeledSequence) -> Result<FiberSet> {
        if a.exponents().len() != self.monoid.label_count() {
            return Err(Error::Spec(format!(
                "element has {} labels, monoid has {}",
                a.exponents().len(),
                self.monoid.label_count()
            )));
        }
        let sigma = a.sigma(&self.monoid)?;
        if sigma != self.monoid.group().zero() {
            return Err(Error::NotZeroSum(sigma.to_string()));
        }
        let fiber = self.engine.factorizations(a.exponents(), DEFAULT_FIBER_CAP)?;
        for z in fiber.members() {
            if z.product(self.engine.atoms(), self.engine.basis_len()) != a.exponents() {
                return Err(Error::InvalidWitness("factorization product mismatch".into()));
            }
        }
        Ok(fiber)
    }

    /// Atom index of a labeled atom.
    pub fn atom_index(&self, atom: &LabeledSequence) -> Option<usize> {
        self.table.position(atom)
    }

    /// Factorization from explicit labeled atoms.
    pub fn factorization_of(&self, atoms: &[LabeledSequence]) -> Result<Factorization> {
        let ids = atoms
            .iter()
            .map(|a| {
                self.atom_index(a)
                    .ok_or_else(|| Error::InvalidWitness(format!("{a:?} is not an atom")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization::from_atoms(ids))
    }

    pub fn render_factorization(&self, z: &Factorization) -> String {
        z.parts()
            .iter()
            .map(|&(a, k)| {
                let body = format!("({})", self.table.atoms()[a].render(&self.monoid));
                if k == 1 {
                    body
                } else {
                    format!("{body}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn cyclic_pm(d: u64) -> (LabeledMonoid, LabeledFactorizer) {
        let g = AbelianGroup::cyclic(d).unwrap();
        let m = LabeledMonoid::block(
            g.clone(),
            &[g.element(&[1]).unwrap(), g.element(&[-1]).unwrap()],
        )
        .unwrap();
        let f = LabeledFactorizer::new(&m).unwrap();
        (m, f)
    }

    #[test]
    fn distance_examples() {
        let z = Factorization::from_atoms([0, 1]);
        assert_eq!(distance(&z, &z), 0);
        let v4 = Factorization::new(vec![(2, 4)]);
        assert_eq!(distance(&z, &v4), 4);
        let a = Factorization::from_atoms([0, 0, 1, 3]);
        let b = Factorization::from_atoms([0, 2, 2]);
        // common part is one copy of atom 0
        assert_eq!(distance(&a, &b), 3);
        let u44 = Factorization::new(vec![(3, 4)]);
        let vw = Factorization::from_atoms([4, 5]);
        assert_eq!(distance(&u44, &vw), 4);
    }

    #[test]
    fn plus_minus_fiber() {
        for d in 3..8u32 {
            let (m, f) = cyclic_pm(d as u64);
            // labels: g = slot of 1, -g = slot of d-1
            let a = m.sequence(&[(0, d), (1, d)]).unwrap();
            let fiber = f.factorizations(&a).unwrap();
            assert_eq!(fiber.len(), 2);
            let lens = fiber.length_set();
            assert_eq!(lens, LengthSet::new([2, d]));
            assert_eq!(fiber.catenary(), d);
            assert_eq!(fiber.relation_distances(), BTreeSet::from([d]));
            assert_eq!(lens.elasticity().unwrap(), Ratio::new(d as u64, 2));
            let (z, w) = (&fiber.members()[0], &fiber.members()[1]);
            assert_eq!(distance(z, w), d);
            assert!(!fiber.chain_exists(z, w, d - 1).unwrap());
            assert!(fiber.chain_exists(z, w, d).unwrap());
            assert!(fiber.chain_exists(z, z, 0).unwrap());
        }
    }

    #[test]
    fn single_atom_fiber() {
        let (m, f) = cyclic_pm(5);
        let a = m.sequence(&[(0, 5)]).unwrap();
        let fiber = f.factorizations(&a).unwrap();
        assert_eq!(fiber.len(), 1);
        assert_eq!(fiber.members()[0].len(), 1);
        assert_eq!(fiber.catenary(), 0);
        assert!(fiber.relation_distances().is_empty());
    }

    #[test]
    fn two_prime_c2_fiber() {
        let c2 = AbelianGroup::cyclic(2).unwrap();
        let m = LabeledMonoid::new(c2.clone(), vec![(c2.element(&[1]).unwrap(), 2)]).unwrap();
        let f = LabeledFactorizer::new(&m).unwrap();
        let a = m.sequence(&[(0, 2), (1, 2)]).unwrap();
        let fiber = f.factorizations(&a).unwrap();
        let p2 = m.sequence(&[(0, 2)]).unwrap();
        let q2 = m.sequence(&[(1, 2)]).unwrap();
        let pq = m.sequence(&[(0, 1), (1, 1)]).unwrap();
        let z1 = f.factorization_of(&[p2, q2]).unwrap();
        let z2 = f.factorization_of(&[pq.clone(), pq]).unwrap();
        assert_eq!(fiber.members(), &{
            let mut v = vec![z1, z2];
            v.sort();
            v
        }[..]);
        assert_eq!(fiber.catenary(), 2);
    }

    #[test]
    fn non_zero_sum_rejected() {
        let (m, f) = cyclic_pm(4);
        let a = m.sequence(&[(0, 3)]).unwrap();
        assert!(matches!(f.factorizations(&a), Err(Error::NotZeroSum(_))));
        let fiber = f.factorizations(&m.sequence(&[(0, 4)]).unwrap()).unwrap();
        let stranger = Factorization::from_atoms([7]);
        assert!(matches!(
            fiber.chain_exists(&stranger, &fiber.members()[0], 1),
            Err(Error::NotInFiber)
        ));
    }

    #[test]
    fn length_set_examples() {
        let l = LengthSet::new([2, 4, 5]);
        assert_eq!(l.delta(), BTreeSet::from([1, 2]));
        assert!(LengthSet::new([7]).delta().is_empty());
        assert_eq!(LengthSet::new([0]).elasticity().unwrap(), Ratio::from_integer(1));
        assert!(matches!(
            LengthSet::default().elasticity(),
            Err(Error::EmptyLengthSet)
        ));
        assert_eq!(l.min_beyond_two(), Some(4));
    }

    /// Independent oracle: all multisets of atoms (from the full table, with
    /// no ordering tricks) whose product is the element.
    fn brute_fiber(atoms: &[Vec<u32>], element: &[u32]) -> BTreeSet<Factorization> {
        fn rec(
            atoms: &[Vec<u32>],
            idx: usize,
            rest: &mut Vec<u32>,
            chosen: &mut Vec<usize>,
            out: &mut BTreeSet<Factorization>,
        ) {
            if rest.iter().all(|&r| r == 0) {
                out.insert(Factorization::from_atoms(chosen.iter().copied()));
                return;
            }
            if idx == atoms.len() {
                return;
            }
            rec(atoms, idx + 1, rest, chosen, out);
            let mut taken = 0;
            while atoms[idx].iter().zip(rest.iter()).all(|(&e, &r)| e <= r) {
                for (r, &e) in rest.iter_mut().zip(&atoms[idx]) {
                    *r -= e;
                }
                chosen.push(idx);
                taken += 1;
                rec(atoms, idx + 1, rest, chosen, out);
            }
            for _ in 0..taken {
                chosen.pop();
                for (r, &e) in rest.iter_mut().zip(&atoms[idx]) {
                    *r += e;
                }
            }
        }
        let mut out = BTreeSet::new();
        rec(atoms, 0, &mut element.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn group_strategy() -> impl Strategy<Value = Vec<u64>> {
            prop::sample::select(vec![
                vec![2u64],
                vec![3],
                vec![4],
                vec![5],
                vec![6],
                vec![2, 2],
            ])
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn fiber_matches_exhaustive_search(
                moduli in group_strategy(),
                raw in prop::collection::vec(0usize..6, 0..8),
            ) {
                let grp = AbelianGroup::new(&moduli).unwrap();
                let m = LabeledMonoid::full(grp.clone()).unwrap();
                let f = LabeledFactorizer::new(&m).unwrap();
                let n = grp.order() as usize;
                let mut exps = vec![0u32; n];
                for r in &raw {
                    exps[r % n] += 1;
                }
                // close to a zero-sum sequence of length <= 8
                let seq = LabeledSequence::from_exponents(exps.clone());
                let s = seq.sigma(&m).unwrap();
                if s != grp.zero() {
                    let closing = grp.index_of(&grp.negate(&s).unwrap()).unwrap();
                    exps[closing] += 1;
                }
                let a = LabeledSequence::from_exponents(exps);
                prop_assume!(a.len() <= 8);
                let fiber = f.factorizations(&a).unwrap();
                let brute = brute_fiber(f.engine().atoms(), a.exponents());
                let ours: BTreeSet<Factorization> = fiber.members().iter().cloned().collect();
                prop_assert_eq!(&ours, &brute);
                prop_assert!(!fiber.is_empty());

                // distance structure
                for i in 0..fiber.len() {
                    prop_assert_eq!(fiber.distance(i, i), 0);
                    for j in 0..fiber.len() {
                        prop_assert_eq!(fiber.distance(i, j), fiber.distance(j, i));
                        if i != j {
                            let (zi, zj) = (&fiber.members()[i], &fiber.members()[j]);
                            let gap = zi.len().abs_diff(zj.len());
                            prop_assert!(fiber.distance(i, j) >= 2 + gap);
                            let extra = Factorization::from_atoms([0, 1]);
                            prop_assert_eq!(
                                distance(&zi.concat(&extra), &zj.concat(&extra)),
                                fiber.distance(i, j)
                            );
                        }
                    }
                }
                if fiber.len() > 1 {
                    let c = fiber.catenary();
                    let lens = fiber.length_set();
                    let max_delta = lens.delta().into_iter().max().unwrap_or(0);
                    prop_assert!(c >= 2 + max_delta);
                    let rel = fiber.relation_distances();
                    prop_assert!(rel.contains(&c));
                    // brute-force relation distances via chain_exists
                    let mut brute_rel = BTreeSet::new();
                    for i in 0..fiber.len() {
                        for j in i + 1..fiber.len() {
                            let d = fiber.distance(i, j);
                            if !fiber.chain_exists(&fiber.members()[i], &fiber.members()[j], d - 1).unwrap() {
                                brute_rel.insert(d);
                            }
                        }
                    }
                    prop_assert_eq!(rel, brute_rel);
                    // least N making the <= N graph connected
                    let mut least = 0;
                    while !(0..fiber.len()).all(|j| fiber.connected_below(0, j, least + 1)) {
                        least += 1;
                    }
                    prop_assert_eq!(c, least);
                } else {
                    prop_assert_eq!(fiber.catenary(), 0);
                }
            }
        }
    }
}
