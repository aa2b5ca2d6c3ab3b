//! Catenary degree of a monoid from theorems where they apply, scans elsewhere.

use serde::Serialize;

use super::{daleth_star, ScanReport};
use crate::blockmonoid::LabeledMonoid;
use crate::blockmonoid::davenport;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, DEFAULT_ELEMENT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatenaryStatus {
    ExactByTheorem,
    /// A scan reached the upper bound `c(H) ≤ D(G_P)`.
    ExactByExhaustion,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Catenary {
    pub value: u32,
    pub status: CatenaryStatus,
}

/// `c(H)` of a labeled monoid.
///
/// Exact when every class holds a prime and `|G| ≤ 2`, `D(G) = 3` or
/// `D(G) = D*(G) ≥ 4`. Otherwise the largest catenary degree seen by `scan`
/// is returned as a lower bound, which is required in that case.
pub fn catenary_monoid(monoid: &LabeledMonoid, scan: Option<&ScanReport>) -> Result<Catenary> {
    let exact = |value| Catenary {
        value,
        status: CatenaryStatus::ExactByTheorem,
    };
    let group = monoid.group();
    if group.order() == 1 {
        return Ok(exact(0));
    }
    let table = monoid.class_atoms()?;
    let d = table.davenport();
    if monoid.has_full_support() {
        if group.order() == 2 {
            return Ok(exact(if monoid.has_multiple_primes() { 2 } else { 0 }));
        }
        if d == 3 {
            return Ok(exact(3));
        }
        if d == group.d_star() && d >= 4 {
            let max = daleth_star(monoid)?.max().unwrap_or(0);
            return Ok(exact(max));
        }
    }
    let scan = scan.ok_or_else(|| {
        Error::InvalidParameter("no theorem applies; a scan is required for a lower bound".into())
    })?;
    let observed = scan.ca_observed().last().copied().unwrap_or(0);
    let status = if observed >= 2 && observed as u64 == d {
        CatenaryStatus::ExactByExhaustion
    } else {
        CatenaryStatus::LowerBound
    };
    Ok(Catenary {
        value: observed,
        status,
    })
}

/// The inequality `⌊D(G)/2 + 1⌋ ≤ max{n_r, 1 + Σ⌊n_i/2⌋}` with `D(G)` enumerated.
pub fn star_condition(group: &AbelianGroup) -> Result<bool> {
    let elements = group.enumerate_elements(DEFAULT_ELEMENT_CAP)?;
    let d = davenport(group, &elements)?;
    let factors = group.invariant_factors();
    let n_r = factors.last().copied().unwrap_or(1);
    let halves = 1 + factors.iter().map(|n| n / 2).sum::<u64>();
    Ok(d / 2 < n_r.max(halves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::scan;

    fn full(moduli: &[u64]) -> LabeledMonoid {
        LabeledMonoid::full(AbelianGroup::new(moduli).unwrap()).unwrap()
    }

    #[test]
    fn theorem_cases() {
        let c = catenary_monoid(&full(&[5]), None).unwrap();
        assert_eq!((c.value, c.status), (5, CatenaryStatus::ExactByTheorem));
        let c = catenary_monoid(&full(&[3]), None).unwrap();
        assert_eq!((c.value, c.status), (3, CatenaryStatus::ExactByTheorem));
        let c = catenary_monoid(&full(&[]), None).unwrap();
        assert_eq!((c.value, c.status), (0, CatenaryStatus::ExactByTheorem));
        assert_eq!(catenary_monoid(&full(&[2]), None).unwrap().value, 0);
        let g = AbelianGroup::cyclic(2).unwrap();
        let two = LabeledMonoid::new(g.clone(), vec![(g.zero(), 1), (g.element(&[1]).unwrap(), 2)])
            .unwrap();
        assert_eq!(catenary_monoid(&two, None).unwrap().value, 2);
    }

    /// Exact values agree with the largest catenary degree of a deep scan.
    #[test]
    fn theorem_matches_scan() {
        for moduli in [vec![4u64], vec![5], vec![2, 2]] {
            let m = full(&moduli);
            let c = catenary_monoid(&m, None).unwrap();
            let r = scan(&m, 2 * m.class_atoms().unwrap().davenport() as u32).unwrap();
            assert_eq!(r.ca_observed().last().copied(), Some(c.value), "{moduli:?}");
        }
    }

    #[test]
    fn scan_required_without_theorem() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let pm = LabeledMonoid::block(
            g.clone(),
            &[g.element(&[1]).unwrap(), g.element(&[3]).unwrap()],
        )
        .unwrap();
        assert!(matches!(catenary_monoid(&pm, None), Err(Error::InvalidParameter(_))));
        let r = scan(&pm, 8).unwrap();
        let c = catenary_monoid(&pm, Some(&r)).unwrap();
        assert_eq!((c.value, c.status), (4, CatenaryStatus::ExactByExhaustion));
        let r = scan(&pm, 2).unwrap();
        let c = catenary_monoid(&pm, Some(&r)).unwrap();
        assert_eq!((c.value, c.status), (0, CatenaryStatus::LowerBound));
    }

    #[test]
    fn star_condition_examples() {
        for moduli in [vec![5u64], vec![2, 2], vec![3, 3]] {
            assert!(star_condition(&AbelianGroup::new(&moduli).unwrap()).unwrap());
        }
    }
}
