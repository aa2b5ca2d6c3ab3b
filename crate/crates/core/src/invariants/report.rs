//! Combined invariant report for a labeled monoid.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{catenary_monoid, daleth_star, scan, Catenary, CatenaryStatus, DalethStar, ScanReport};
use crate::blockmonoid::LabeledMonoid;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub davenport: u64,
    pub d_star: u64,
    /// Exact ℸ*, when requested.
    pub daleth_star: Option<DalethStar>,
    pub scan: ScanReport,
    pub catenary: Catenary,
    /// Values `v ∈ ℸ*` with `v − 2` not yet observed in Δ; empty once
    /// the bound reaches `2·D(G_P)`.
    pub beyond_scan: BTreeSet<u32>,
    /// Violated laws; empty on a healthy run.
    pub violations: Vec<String>,
}

/// ℸ*, a scan up to `bound` and `c(H)`, cross-checked against each other.
pub fn invariant_report(
    monoid: &LabeledMonoid,
    bound: u32,
    exact_daleth: bool,
) -> Result<InvariantReport> {
    let table = monoid.class_atoms()?;
    let davenport = table.davenport();
    let daleth = if exact_daleth {
        Some(daleth_star(monoid)?)
    } else {
        None
    };
    let scan = scan(monoid, bound)?;
    let catenary = catenary_monoid(monoid, Some(&scan))?;

    let mut violations = scan.violations.clone();
    violations.extend(scan.monoid_law_violations());
    let deep = bound as u64 >= 2 * davenport;
    let delta = scan.delta_observed();
    let r = scan.r_observed();
    let mut beyond_scan = BTreeSet::new();
    if let Some(daleth) = &daleth {
        for &v in &daleth.values {
            if v < 3 {
                violations.push(format!("ℸ* contains {v} < 3"));
            }
            if !delta.contains(&(v - 2)) {
                if deep {
                    violations.push(format!("{v} ∈ ℸ* but {} ∉ Δ at bound {bound}", v - 2));
                } else {
                    beyond_scan.insert(v);
                }
            }
        }
        let theorem = monoid.has_full_support()
            && davenport == monoid.group().d_star()
            && davenport >= 4
            && catenary.status == CatenaryStatus::ExactByTheorem;
        if theorem && deep {
            let max = daleth.max().unwrap_or(0);
            for &d in &r {
                if !(2..=max).contains(&d) {
                    violations.push(format!("{d} ∈ ℛ lies outside [2, {max}]"));
                }
            }
            for d in daleth.values.iter().copied().chain([2]) {
                if !r.contains(&d) {
                    violations.push(format!("{d} ∈ ℸ* ∪ {{2}} not observed in ℛ"));
                }
            }
        }
    }
    if catenary.status != CatenaryStatus::LowerBound {
        if let Some(&c) = scan.ca_observed().last() {
            if c > catenary.value {
                violations.push(format!("observed catenary degree {c} exceeds c(H) = {}", catenary.value));
            }
        }
    }
    Ok(InvariantReport {
        davenport,
        d_star: monoid.group().d_star(),
        daleth_star: daleth,
        scan,
        catenary,
        beyond_scan,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    #[test]
    fn c4_report_is_consistent() {
        let m = LabeledMonoid::full(AbelianGroup::cyclic(4).unwrap()).unwrap();
        let r = invariant_report(&m, 8, true).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.catenary.value, 4);
        assert_eq!(r.scan.r_observed(), BTreeSet::from([2, 3, 4]));
        assert!(r.beyond_scan.is_empty());
    }

    #[test]
    fn shallow_scan_flags_values() {
        let m = LabeledMonoid::full(AbelianGroup::cyclic(5).unwrap()).unwrap();
        let r = invariant_report(&m, 4, true).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.beyond_scan.contains(&5));
    }
}
