//! Bounded scans for Δ(H), Ca(H) and ℛ(H).
//!
//! No finite procedure determines these sets in general, so a scan visits
//! every element up to a size bound and reports what it observed. The
//! observed sets are lower bounds of the true ones and carry a replayable
//! witness for every value.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::blockmonoid::{LabeledMonoid, LabeledSequence};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, FiberSet, LabeledFactorizer};

/// A family of elements that can be enumerated up to a bound and factored.
pub trait FiberSource: Sync {
    /// Elements of size at most `bound`, in a deterministic order. Elements
    /// that only differ by prime factors may be omitted.
    fn elements(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>>;

    /// Complete fiber of `element`. Two elements with the same fiber must
    /// report the same [`FiberSet::element`].
    fn fiber(&self, element: &[u32]) -> Result<FiberSet>;
}

/// Resource limits for scans.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub max_elements: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_elements: 2_000_000,
        }
    }
}

/// An element with two of its factorizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: Vec<u32>,
    pub first: Factorization,
    pub second: Factorization,
}

/// Observed invariants of one scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub bound: u32,
    pub elements_scanned: usize,
    pub multi_factorization_elements: usize,
    pub delta: BTreeMap<u32, Witness>,
    pub catenary: BTreeMap<u32, Witness>,
    pub relations: BTreeMap<u32, Witness>,
    /// Largest elasticity seen, as `(numerator, denominator)`.
    pub max_elasticity: Option<(u64, u64)>,
    pub max_elasticity_witness: Option<Witness>,
    /// Per-element law violations; empty on a healthy run.
    pub violations: Vec<String>,
}

impl ScanReport {
    pub fn delta_observed(&self) -> BTreeSet<u32> {
        self.delta.keys().copied().collect()
    }

    pub fn ca_observed(&self) -> BTreeSet<u32> {
        self.catenary.keys().copied().collect()
    }

    pub fn r_observed(&self) -> BTreeSet<u32> {
        self.relations.keys().copied().collect()
    }

    pub fn max_elasticity_ratio(&self) -> Option<Ratio<u64>> {
        self.max_elasticity.map(|(n, d)| Ratio::new(n, d))
    }

    /// Monoid-level laws that must hold on any scan: `min Δ = gcd Δ`
    /// and `Ca ⊆ ℛ`.
    pub fn monoid_law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let delta = self.delta_observed();
        if let Some(&min) = delta.first() {
            let gcd = delta.iter().fold(0, |g, &d| num_integer::gcd(g, d));
            if gcd != min {
                out.push(format!("min Δ = {min} but gcd Δ = {gcd}"));
            }
        }
        let r = self.r_observed();
        for c in self.ca_observed() {
            if !r.contains(&c) {
                out.push(format!("catenary degree {c} missing from ℛ"));
            }
        }
        out
    }
}

struct ElementOutcome {
    fiber: FiberSet,
    delta: Vec<(u32, usize, usize)>,
    catenary: Option<(u32, usize, usize)>,
    relations: Vec<(u32, usize, usize)>,
    elasticity: Option<(Ratio<u64>, usize, usize)>,
    violations: Vec<String>,
}

fn examine(fiber: FiberSet) -> ElementOutcome {
    let mut out = ElementOutcome {
        delta: Vec::new(),
        catenary: None,
        relations: Vec::new(),
        elasticity: None,
        violations: Vec::new(),
        fiber,
    };
    let fiber = &out.fiber;
    let f = fiber.len();
    if f <= 1 {
        return out;
    }
    // shortest and longest factorization for Δ and ρ witnesses
    let mut by_len: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, z) in fiber.members().iter().enumerate() {
        by_len.entry(z.len()).or_insert(i);
    }
    let lens: Vec<(u32, usize)> = by_len.into_iter().collect();
    for w in lens.windows(2) {
        out.delta.push((w[1].0 - w[0].0, w[0].1, w[1].1));
    }
    let (lo, hi) = (lens[0], lens[lens.len() - 1]);
    if lo.0 > 0 {
        out.elasticity = Some((Ratio::new(hi.0 as u64, lo.0 as u64), lo.1, hi.1));
    }

    let analysis = fiber.analyze();
    let (ci, cj) = analysis.catenary_pair.expect("fiber has two members");
    out.catenary = Some((analysis.catenary, ci, cj));
    out.relations = analysis
        .relation_distances
        .iter()
        .map(|(&d, &(i, j))| (d, i, j))
        .collect();

    let max_delta = out.delta.iter().map(|d| d.0).max().unwrap_or(0);
    if analysis.catenary < 2 + max_delta {
        out.violations.push(format!(
            "{:?}: c(a) = {} < 2 + max Δ(L(a)) = {}",
            fiber.element(),
            analysis.catenary,
            2 + max_delta
        ));
    }
    if !analysis.relation_distances.contains_key(&analysis.catenary) {
        out.violations.push(format!(
            "{:?}: c(a) = {} not among relation distances",
            fiber.element(),
            analysis.catenary
        ));
    }
    for i in 0..f {
        for j in i + 1..f {
            let gap = fiber.members()[i].len().abs_diff(fiber.members()[j].len());
            if fiber.distance(i, j) < 2 + gap {
                out.violations.push(format!(
                    "{:?}: distance {} below 2 + {gap}",
                    fiber.element(),
                    fiber.distance(i, j)
                ));
            }
        }
    }
    out
}

fn witness(fiber: &FiberSet, i: usize, j: usize) -> Witness {
    Witness {
        element: fiber.element().to_vec(),
        first: fiber.members()[i].clone(),
        second: fiber.members()[j].clone(),
    }
}

/// Scans every element of `source` up to `bound`.
pub fn scan_source<S: FiberSource + ?Sized>(
    source: &S,
    bound: u32,
    config: ScanConfig,
) -> Result<ScanReport> {
    if bound < 1 {
        return Err(Error::InvalidParameter("scan bound must be at least 1".into()));
    }
    let elements = source.elements(bound, config.max_elements)?;
    let mut report = ScanReport {
        bound,
        elements_scanned: 0,
        multi_factorization_elements: 0,
        delta: BTreeMap::new(),
        catenary: BTreeMap::new(),
        relations: BTreeMap::new(),
        max_elasticity: None,
        max_elasticity_witness: None,
        violations: Vec::new(),
    };
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut best_rho: Option<Ratio<u64>> = None;
    for chunk in elements.chunks(4096) {
        let outcomes: Vec<Result<ElementOutcome>> = chunk
            .par_iter()
            .map(|e| source.fiber(e).map(examine))
            .collect();
        for outcome in outcomes {
            let o = outcome?;
            if !seen.insert(o.fiber.element().to_vec()) {
                continue;
            }
            report.elements_scanned += 1;
            if o.fiber.len() > 1 {
                report.multi_factorization_elements += 1;
            }
            for &(d, i, j) in &o.delta {
                report.delta.entry(d).or_insert_with(|| witness(&o.fiber, i, j));
            }
            if let Some((c, i, j)) = o.catenary {
                report.catenary.entry(c).or_insert_with(|| witness(&o.fiber, i, j));
            }
            for &(d, i, j) in &o.relations {
                report.relations.entry(d).or_insert_with(|| witness(&o.fiber, i, j));
            }
            if let Some((rho, i, j)) = o.elasticity {
                if best_rho.is_none_or(|b| rho > b) {
                    best_rho = Some(rho);
                    report.max_elasticity = Some((*rho.numer(), *rho.denom()));
                    report.max_elasticity_witness = Some(witness(&o.fiber, i, j));
                }
            }
            report.violations.extend(o.violations);
        }
    }
    Ok(report)
}

/// Zero-sum labeled sequences of length `1..=bound` avoiding prime labels
/// (labels in the zero class), ordered by length and then exponent vector.
pub fn zero_sum_elements(
    monoid: &LabeledMonoid,
    bound: u32,
    cap: usize,
) -> Result<Vec<Vec<u32>>> {
    let group = monoid.group();
    let ig = crate::group::IndexedGroup::new(group)?;
    let zero = group.zero();
    let labels: Vec<(usize, usize)> = (0..monoid.label_count())
        .filter(|&l| *monoid.class_of(l) != zero)
        .map(|l| Ok((l, group.index_of(monoid.class_of(l))?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current = vec![0u32; monoid.label_count()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        ig: &crate::group::IndexedGroup,
        labels: &[(usize, usize)],
        pos: usize,
        left: u32,
        sum: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<()> {
        if pos == labels.len() {
            if sum == 0 && current.iter().any(|&k| k > 0) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "scan would visit more than {cap} elements"
                    )));
                }
                out.push(current.clone());
            }
            return Ok(());
        }
        let (label, class) = labels[pos];
        let mut s = sum;
        for k in 0..=left {
            current[label] = k;
            rec(ig, labels, pos + 1, left - k, s, current, out, cap)?;
            s = ig.add(s, class);
        }
        current[label] = 0;
        Ok(())
    }

    rec(&ig, &labels, 0, bound, 0, &mut current, &mut out, cap)?;
    out.sort_by(|a, b| {
        let (la, lb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        la.cmp(&lb).then_with(|| b.cmp(a))
    });
    Ok(out)
}

impl FiberSource for LabeledFactorizer {
    fn elements(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
        zero_sum_elements(self.monoid(), bound, cap)
    }

    fn fiber(&self, element: &[u32]) -> Result<FiberSet> {
        self.factorizations(&LabeledSequence::from_exponents(element.to_vec()))
    }
}

/// Scan of a labeled monoid.
pub fn scan(monoid: &LabeledMonoid, bound: u32) -> Result<ScanReport> {
    let factorizer = LabeledFactorizer::new(monoid)?;
    scan_source(&factorizer, bound, ScanConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    fn full(moduli: &[u64]) -> LabeledMonoid {
        LabeledMonoid::full(AbelianGroup::new(moduli).unwrap()).unwrap()
    }

    fn plus_minus(d: u64) -> LabeledMonoid {
        let g = AbelianGroup::cyclic(d).unwrap();
        LabeledMonoid::block(
            g.clone(),
            &[g.element(&[1]).unwrap(), g.element(&[-1]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn c2_is_factorial() {
        for bound in [1, 4, 8] {
            let r = scan(&full(&[2]), bound).unwrap();
            assert!(r.delta.is_empty() && r.catenary.is_empty() && r.relations.is_empty());
        }
    }

    #[test]
    fn plus_minus_c4() {
        let r = scan(&plus_minus(4), 8).unwrap();
        assert_eq!(r.ca_observed(), BTreeSet::from([4]));
        assert_eq!(r.r_observed(), BTreeSet::from([4]));
        assert!(r.violations.is_empty());
    }

    /// Oracle for the C_3 delta scan: enumerate all zero-sum sequences
    /// g^a (2g)^b with a + b <= 6 and factor them by brute force over
    /// products U^x (−U)^y V^z.
    #[test]
    fn c3_delta_scan() {
        let mut deltas = BTreeSet::new();
        for a in 0..=6u32 {
            for b in 0..=6 - a {
                if (a + 2 * b) % 3 != 0 {
                    continue;
                }
                let mut lens = BTreeSet::new();
                for z in 0..=a.min(b) {
                    if (a - z) % 3 == 0 && (b - z) % 3 == 0 {
                        lens.insert((a - z) / 3 + (b - z) / 3 + z);
                    }
                }
                let v: Vec<u32> = lens.into_iter().collect();
                deltas.extend(v.windows(2).map(|w| w[1] - w[0]));
            }
        }
        assert_eq!(deltas, BTreeSet::from([1]));
        let r = scan(&full(&[3]), 6).unwrap();
        assert_eq!(r.delta_observed(), deltas);
        assert!(r.violations.is_empty());
        assert!(r.monoid_law_violations().is_empty());
    }

    #[test]
    fn enumeration_skips_primes_and_is_sorted() {
        let m = full(&[3]);
        let els = zero_sum_elements(&m, 3, 100).unwrap();
        // labels: 0 (prime), 1, 2
        assert_eq!(els, vec![vec![0, 1, 1], vec![0, 3, 0], vec![0, 0, 3]]);
        assert!(matches!(
            zero_sum_elements(&full(&[5]), 10, 5),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn witnesses_replay() {
        let m = full(&[4]);
        let f = LabeledFactorizer::new(&m).unwrap();
        let r = scan_source(&f, 8, ScanConfig::default()).unwrap();
        for (d, w) in &r.relations {
            let fiber = f.fiber(&w.element).unwrap();
            assert_eq!(crate::factorization::distance(&w.first, &w.second), *d);
            assert!(!fiber.chain_exists(&w.first, &w.second, d - 1).unwrap());
        }
        for (c, w) in &r.catenary {
            assert_eq!(f.fiber(&w.element).unwrap().catenary(), *c);
        }
    }
}
