//! Reduced atomic monoids given by generators and an integer relation lattice.
//!
//! Factorizations of an element are the points of `(y₀ + L) ∩ ℕ^m`. Fibers
//! are built by closing `{y₀}` under a move set; [`PresentedMonoid::verify_fiber_complete`]
//! cross-checks a closure against a brute-force box search.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::factorization::{Factorization, FiberSet};
use crate::invariants::FiberSource;

/// Default number of fiber members visited before a closure is abandoned.
pub const DEFAULT_PRESENTED_CAP: usize = 100_000;
/// Largest box visited by the brute-force oracles.
pub const BOX_POINT_CAP: u128 = 50_000_000;

/// A row-span lattice in diagonal form: `v ∈ L` iff `w = v·V` has
/// `w_i ≡ 0 (mod d_i)` for `i < rank` and `w_i = 0` beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Diagonalized {
    v: Vec<Vec<i128>>,
    diag: Vec<i128>,
}

impl Diagonalized {
    fn new(rows: &[Vec<i64>], m: usize) -> Self {
        let mut a: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let k = a.len();
        let mut v: Vec<Vec<i128>> = (0..m)
            .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
            .collect();
        let mut diag = Vec::new();
        for t in 0..k.min(m) {
            loop {
                // smallest nonzero entry of the trailing block
                let pivot = (t..k)
                    .flat_map(|i| (t..m).map(move |j| (i, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].abs());
                let Some((pi, pj)) = pivot else {
                    return Diagonalized { v, diag };
                };
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..k {
                    let q = a[i][t] / p;
                    if q != 0 {
                        let (top, rest) = a.split_at_mut(i);
                        for (x, &y) in rest[0][t..m].iter_mut().zip(&top[t][t..m]) {
                            *x -= q * y;
                        }
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..m {
                    let q = a[t][j] / p;
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for row in v.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    clean &= a[t][j] == 0;
                }
                if clean {
                    diag.push(p.abs());
                    break;
                }
            }
        }
        Diagonalized { v, diag }
    }

    fn transform(&self, x: &[i64]) -> Vec<i128> {
        let m = self.v.len();
        (0..m)
            .map(|j| x.iter().zip(&self.v).map(|(&xi, row)| xi as i128 * row[j]).sum())
            .collect()
    }

    fn accepts(&self, w: &[i128]) -> bool {
        w.iter().enumerate().all(|(i, &wi)| match self.diag.get(i) {
            Some(&d) => wi % d == 0,
            None => wi == 0,
        })
    }
}

/// A monoid with atoms `u_1…u_m` and relation lattice `L ⊂ ℤ^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedMonoid {
    atom_count: usize,
    relations: Vec<Vec<i64>>,
    moves: Vec<Vec<i64>>,
    cap: usize,
    lattice: Diagonalized,
}

impl PresentedMonoid {
    /// Validates dimensions, checks that every move lies in `L`, and that
    /// `L ∩ ℕ^m = {0}` inside a box of side `pointed_box`.
    pub fn new(
        atom_count: usize,
        relations: Vec<Vec<i64>>,
        moves: Option<Vec<Vec<i64>>>,
        cap: usize,
    ) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::InvalidParameter("a presented monoid needs atoms".into()));
        }
        for r in relations.iter().chain(moves.iter().flatten()) {
            if r.len() != atom_count {
                return Err(Error::Spec(format!(
                    "relation {r:?} has {} entries, expected {atom_count}",
                    r.len()
                )));
            }
        }
        let lattice = Diagonalized::new(&relations, atom_count);
        let moves = moves.unwrap_or_else(|| relations.clone());
        let monoid = PresentedMonoid {
            atom_count,
            relations,
            moves,
            cap: cap.max(1),
            lattice,
        };
        for mv in &monoid.moves {
            if !monoid.lattice_member(mv) {
                return Err(Error::Spec(format!("move {mv:?} is not in the relation lattice")));
            }
        }
        monoid.check_pointed(monoid.pointed_box())?;
        Ok(monoid)
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn moves(&self) -> &[Vec<i64>] {
        &self.moves
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Same lattice and cap with a different move set.
    pub fn with_moves(&self, moves: Vec<Vec<i64>>) -> Result<Self> {
        PresentedMonoid::new(self.atom_count, self.relations.clone(), Some(moves), self.cap)
    }

    /// Whether `v` lies in the lattice spanned by the relations.
    pub fn lattice_member(&self, v: &[i64]) -> bool {
        v.len() == self.atom_count && self.lattice.accepts(&self.lattice.transform(v))
    }

    /// Largest box side `b ≤ 4` with `(b + 1)^m` points under a million.
    fn pointed_box(&self) -> u32 {
        (1..=4u32)
            .rev()
            .find(|&b| ((b + 1) as f64).powi(self.atom_count as i32) <= 1e6)
            .unwrap_or(1)
    }

    /// Searches `[0, side]^m \ {0}` for a point of `L`.
    pub fn check_pointed(&self, side: u32) -> Result<()> {
        let upper = vec![side; self.atom_count];
        let mut found = None;
        self.for_each_in_box(&vec![0; self.atom_count], &upper, |y, member| {
            if member && y.iter().any(|&c| c > 0) {
                found = Some(y.iter().map(|&c| c as i64).collect());
                false
            } else {
                true
            }
        })?;
        match found {
            Some(v) => Err(Error::LatticeViolation(v)),
            None => Ok(()),
        }
    }

    /// Visits every `y` with `0 ≤ y ≤ upper`, reporting whether `y − base ∈ L`.
    /// Stops early when `visit` returns false.
    fn for_each_in_box(
        &self,
        base: &[u32],
        upper: &[u32],
        mut visit: impl FnMut(&[u32], bool) -> bool,
    ) -> Result<()> {
        let points: u128 = upper.iter().map(|&u| u as u128 + 1).product();
        if points > BOX_POINT_CAP {
            return Err(Error::CapExceeded(format!(
                "box with {points} points exceeds {BOX_POINT_CAP}"
            )));
        }
        let m = self.atom_count;
        let start: Vec<i64> = base.iter().map(|&b| -(b as i64)).collect();
        let mut w = self.lattice.transform(&start);
        let mut y = vec![0u32; m];
        loop {
            if !visit(&y, self.lattice.accepts(&w)) {
                return Ok(());
            }
            // odometer step, updating w = (y − base)·V incrementally
            let mut i = m;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if y[i] < upper[i] {
                    y[i] += 1;
                    for (wj, vij) in w.iter_mut().zip(&self.lattice.v[i]) {
                        *wj += vij;
                    }
                    break;
                }
                let back = y[i] as i128;
                y[i] = 0;
                for (wj, vij) in w.iter_mut().zip(&self.lattice.v[i]) {
                    *wj -= back * vij;
                }
            }
        }
    }

    /// Closure of `{y₀}` under `±moves` inside `ℕ^m`, sorted.
    pub fn closure(&self, y0: &[u32]) -> Result<Vec<Vec<u32>>> {
        if y0.len() != self.atom_count {
            return Err(Error::Spec(format!(
                "element has {} coordinates, expected {}",
                y0.len(),
                self.atom_count
            )));
        }
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut queue = VecDeque::from([y0.to_vec()]);
        seen.insert(y0.to_vec());
        while let Some(y) = queue.pop_front() {
            for mv in &self.moves {
                for sign in [1i64, -1] {
                    let next: Option<Vec<u32>> = y
                        .iter()
                        .zip(mv)
                        .map(|(&c, &d)| u32::try_from(c as i64 + sign * d).ok())
                        .collect();
                    if let Some(next) = next {
                        if seen.insert(next.clone()) {
                            if seen.len() > self.cap {
                                return Err(Error::IncompleteFiber { cap: self.cap });
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// `Z(y₀)` from the move closure. The fiber's element is its least member.
    pub fn fiber(&self, y0: &[u32]) -> Result<FiberSet> {
        let members = self.closure(y0)?;
        let element = members[0].clone();
        let factorizations = members
            .iter()
            .map(|y| {
                Factorization::new(
                    y.iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (i, k))
                        .collect(),
                )
            })
            .collect();
        Ok(FiberSet::new(element, factorizations))
    }

    /// Brute-force `{y ≤ b + margin : y − y₀ ∈ L}`, where `b` is the
    /// componentwise maximum of the closure, and compare with the closure.
    pub fn verify_fiber_complete(&self, y0: &[u32], margin: u32) -> Result<bool> {
        let closure = self.closure(y0)?;
        let upper: Vec<u32> = (0..self.atom_count)
            .map(|i| closure.iter().map(|y| y[i]).max().unwrap_or(0) + margin)
            .collect();
        let mut boxed = Vec::new();
        self.for_each_in_box(y0, &upper, |y, member| {
            if member {
                boxed.push(y.to_vec());
            }
            true
        })?;
        // the odometer visits points in lexicographic order
        Ok(boxed == closure)
    }

    /// Points of `ℕ^m` with coordinate sum in `1..=bound`, by sum and then
    /// descending lexicographic order.
    pub fn elements_up_to(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
        let m = self.atom_count;
        let mut out = Vec::new();
        for total in 1..=bound {
            for c in crate::blockmonoid::weak_compositions(total, m) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "scan would visit more than {cap} elements"
                    )));
                }
                out.push(c);
            }
        }
        Ok(out)
    }
}

impl FiberSource for PresentedMonoid {
    fn elements(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
        self.elements_up_to(bound, cap)
    }

    fn fiber(&self, element: &[u32]) -> Result<FiberSet> {
        PresentedMonoid::fiber(self, element)
    }
}

/// The monoid with atoms `u₁,u₂,u₃,u₄,v,w` and relations `vw = u₁u₂u₃ = u₄⁴`.
pub fn make_example_233() -> PresentedMonoid {
    PresentedMonoid::new(
        6,
        vec![vec![1, 1, 1, -4, 0, 0], vec![1, 1, 1, 0, -1, -1]],
        None,
        DEFAULT_PRESENTED_CAP,
    )
    .expect("valid presentation")
}
