//! Exact computation of ℸ* from pairs of atoms.
//!
//! Sets of lengths of a labeled monoid coincide with those of `B(G_P)`, so
//! the pair search runs over class-level atoms. For each pair `u, v` the set
//! `L(uv)` is computed by a memoized recursion over the atoms dividing `uv`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::blockmonoid::{ClassAtomTable, LabeledMonoid};
use crate::error::{Error, Result};
use crate::factorization::LengthSet;

/// Bit `l` set means length `l` occurs.
type LengthMask = u128;

/// Length sets of elements over a fixed list of atoms in a free basis.
pub struct LengthOracle<'a> {
    atoms: &'a [Vec<u32>],
    masks: Vec<u64>,
    use_masks: bool,
}

impl<'a> LengthOracle<'a> {
    pub fn new(atoms: &'a [Vec<u32>]) -> Self {
        let n = atoms.first().map_or(0, Vec::len);
        let use_masks = n <= 64;
        let masks = atoms
            .iter()
            .map(|a| {
                if use_masks {
                    a.iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .fold(0u64, |m, (i, _)| m | (1 << i))
                } else {
                    0
                }
            })
            .collect();
        LengthOracle {
            atoms,
            masks,
            use_masks,
        }
    }

    /// `L(element)` as a sorted set.
    pub fn lengths(&self, element: &[u32]) -> Result<LengthSet> {
        let total: u32 = element.iter().sum();
        if total >= 128 {
            return Err(Error::CapExceeded(format!(
                "length-set oracle limited to elements shorter than 128 (got {total})"
            )));
        }
        let mask = self.length_mask(element);
        Ok(LengthSet::new((0..128u32).filter(|&l| mask & (1 << l) != 0)))
    }

    fn length_mask(&self, element: &[u32]) -> LengthMask {
        let support = if self.use_masks {
            element
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        } else {
            0
        };
        let local: Vec<&[u32]> = (0..self.atoms.len())
            .filter(|&a| {
                (!self.use_masks || self.masks[a] & !support == 0)
                    && self.atoms[a].iter().zip(element).all(|(&e, &r)| e <= r)
            })
            .map(|a| self.atoms[a].as_slice())
            .collect();
        let n = element.len();
        let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (pos, a) in local.iter().enumerate() {
            for (x, &e) in a.iter().enumerate() {
                if e > 0 {
                    containing[x].push(pos);
                }
            }
        }
        let mut memo: FxHashMap<Vec<u32>, LengthMask> = FxHashMap::default();
        let mut rest = element.to_vec();
        lengths_rec(&local, &containing, &mut rest, &mut memo)
    }
}

fn lengths_rec(
    local: &[&[u32]],
    containing: &[Vec<usize>],
    rest: &mut Vec<u32>,
    memo: &mut FxHashMap<Vec<u32>, LengthMask>,
) -> LengthMask {
    // the basis index with the fewest candidate atoms
    let x = match rest
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0)
        .min_by_key(|(x, _)| containing[*x].len())
    {
        Some((x, _)) => x,
        None => return 1,
    };
    if let Some(&m) = memo.get(rest.as_slice()) {
        return m;
    }
    let mut acc: LengthMask = 0;
    for &pos in &containing[x] {
        let atom = local[pos];
        if atom.iter().zip(rest.iter()).any(|(&e, &r)| e > r) {
            continue;
        }
        for (r, &e) in rest.iter_mut().zip(atom) {
            *r -= e;
        }
        acc |= lengths_rec(local, containing, rest, memo) << 1;
        for (r, &e) in rest.iter_mut().zip(atom) {
            *r += e;
        }
    }
    memo.insert(rest.clone(), acc);
    acc
}

/// One witnessing pair of class atoms for a value of ℸ*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DalethWitness {
    pub first: usize,
    pub second: usize,
    pub lengths: LengthSet,
}

/// ℸ* together with the lexicographically least witness of every value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DalethStar {
    pub values: BTreeSet<u32>,
    pub witnesses: BTreeMap<u32, DalethWitness>,
}

impl DalethStar {
    pub fn max(&self) -> Option<u32> {
        self.values.last().copied()
    }
}

/// Atom permutations induced by the maps `g ↦ kg` with `k` a unit modulo
/// the exponent that fix `G₀`. These preserve sets of lengths.
pub fn power_map_permutations(table: &ClassAtomTable) -> Result<Vec<Vec<usize>>> {
    let group = table.group();
    let support = table.support();
    let exponent = group.exponent();
    let index: FxHashMap<&[u32], usize> = table
        .dense_atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let mut perms = Vec::new();
    for k in 2..exponent {
        if num_integer::gcd(k, exponent) != 1 {
            continue;
        }
        let mut image = Vec::with_capacity(support.len());
        for g in support {
            match support.binary_search(&group.scale(k as i64, g)?) {
                Ok(pos) => image.push(pos),
                Err(_) => break,
            }
        }
        if image.len() != support.len() {
            continue;
        }
        let perm = table
            .dense_atoms()
            .iter()
            .map(|a| {
                let mut b = vec![0u32; a.len()];
                for (pos, &e) in a.iter().enumerate() {
                    b[image[pos]] = e;
                }
                index[b.as_slice()]
            })
            .collect();
        perms.push(perm);
    }
    Ok(perms)
}

/// ℸ* over the atoms of a class table.
pub fn daleth_star_of_table(table: &ClassAtomTable) -> Result<DalethStar> {
    let atoms = table.dense_atoms();
    let oracle = LengthOracle::new(atoms);
    let count = atoms.len();
    let perms = power_map_permutations(table)?;
    // the least pair of each orbit carries the least witness of its value
    let canonical = |i: usize, j: usize| {
        perms.iter().all(|p| {
            let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
            (a, b) >= (i, j)
        })
    };
    let per_first: Vec<Result<BTreeMap<u32, DalethWitness>>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut found: BTreeMap<u32, DalethWitness> = BTreeMap::new();
            let mut product = vec![0u32; atoms[i].len()];
            for j in i..count {
                if !canonical(i, j) {
                    continue;
                }
                for (p, (&x, &y)) in product.iter_mut().zip(atoms[i].iter().zip(&atoms[j])) {
                    *p = x + y;
                }
                let lengths = oracle.lengths(&product)?;
                if lengths.len() > 1 {
                    let value = lengths
                        .min_beyond_two()
                        .expect("a set with two elements has one besides 2");
                    found.entry(value).or_insert(DalethWitness {
                        first: i,
                        second: j,
                        lengths,
                    });
                }
            }
            Ok(found)
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    for found in per_first {
        for (value, w) in found? {
            witnesses.entry(value).or_insert(w);
        }
    }
    Ok(DalethStar {
        values: witnesses.keys().copied().collect(),
        witnesses,
    })
}

/// Exact ℸ* of a labeled monoid, computed on `B(G_P)`.
pub fn daleth_star(monoid: &LabeledMonoid) -> Result<DalethStar> {
    daleth_star_of_table(&monoid.class_atoms()?)
}

/// Outcome of the interval check on ℸ*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DalethInterval {
    pub holds: bool,
    /// `[3, max ℸ*]` when ℸ* is nonempty.
    pub interval: Option<(u32, u32)>,
    pub values: BTreeSet<u32>,
}

/// Checks that ℸ* equals `[3, max ℸ*]`; vacuous for an empty set.
pub fn verify_daleth_interval(monoid: &LabeledMonoid) -> Result<DalethInterval> {
    let daleth = daleth_star(monoid)?;
    Ok(interval_check(&daleth.values))
}

pub(crate) fn interval_check(values: &BTreeSet<u32>) -> DalethInterval {
    match values.last() {
        None => DalethInterval {
            holds: true,
            interval: None,
            values: values.clone(),
        },
        Some(&max) => DalethInterval {
            holds: values.first() == Some(&3) && values.len() as u32 == max - 2,
            interval: Some((3, max)),
            values: values.clone(),
        },
    }
}
