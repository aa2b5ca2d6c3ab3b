//! Explicit elements from the case analysis of `min Ca(H)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::blockmonoid::{LabeledMonoid, LabeledSequence};
use crate::error::{Error, Result};
use crate::factorization::LabeledFactorizer;
use crate::group::{AbelianGroup, GroupElement};
use crate::invariants::scan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case {
    #[serde(rename = "1.1")]
    C1_1,
    #[serde(rename = "1.2")]
    C1_2,
    #[serde(rename = "1.3")]
    C1_3,
    #[serde(rename = "2.1")]
    C2_1,
    #[serde(rename = "2.2")]
    C2_2,
    #[serde(rename = "2.3")]
    C2_3,
    #[serde(rename = "3")]
    C3,
    #[serde(rename = "4")]
    C4,
}

impl Case {
    pub const ALL: [Case; 8] = [
        Case::C1_1,
        Case::C1_2,
        Case::C1_3,
        Case::C2_1,
        Case::C2_2,
        Case::C2_3,
        Case::C3,
        Case::C4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Case::C1_1 => "1.1",
            Case::C1_2 => "1.2",
            Case::C1_3 => "1.3",
            Case::C2_1 => "2.1",
            Case::C2_2 => "2.2",
            Case::C2_3 => "2.3",
            Case::C3 => "3",
            Case::C4 => "4",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.id() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown case {s:?}")))
    }
}

/// Parameters of a case; `None` picks the smallest admissible value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseParams {
    /// `m ≥ 2` for CASES 3 and 4.
    pub m: Option<u32>,
    /// Rank of the elementary group for CASES 1.2 (≥ 3) and 2.2 (≥ 2).
    pub rank: Option<usize>,
}

/// A monoid, an element and two of its factorizations, with the expected
/// catenary degree and, for the exceptional cases, the expected `Ca = ℛ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseWitness {
    pub case: Case,
    pub monoid: LabeledMonoid,
    pub element: LabeledSequence,
    pub factorizations: [Vec<LabeledSequence>; 2],
    pub expected_catenary: u32,
    /// `(bound, set)`: scans at `bound` must give `Ca = ℛ = set`.
    pub expected_scan: Option<(u32, BTreeSet<u32>)>,
}

/// Outcome of replaying a [`CaseWitness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReplay {
    pub case: Case,
    pub element: String,
    pub fiber: Vec<String>,
    pub lengths: BTreeSet<u32>,
    pub catenary: u32,
    pub expected_catenary: u32,
    pub relation_distances: BTreeSet<u32>,
    pub contains_stated_factorizations: bool,
    pub scan_bound: Option<u32>,
    pub ca_observed: Option<BTreeSet<u32>>,
    pub r_observed: Option<BTreeSet<u32>>,
    pub passed: bool,
}

struct Builder {
    monoid: LabeledMonoid,
}

impl Builder {
    fn new(group: AbelianGroup, extra: &[(GroupElement, u32)]) -> Result<Self> {
        let mut classes: Vec<(GroupElement, u32)> = group
            .enumerate_elements(crate::group::DEFAULT_ELEMENT_CAP)?
            .into_iter()
            .map(|g| (g, 1))
            .collect();
        for (g, k) in extra {
            classes.push((g.clone(), *k));
        }
        Ok(Builder {
            monoid: LabeledMonoid::new(group, classes)?,
        })
    }

    /// Label `copy` of class `g`.
    fn prime(&self, g: &GroupElement, copy: u32) -> usize {
        let slot = self.monoid.class_slot(g).expect("class present");
        self.monoid.label_index(slot, copy).expect("copy present")
    }

    fn seq(&self, items: &[(usize, u32)]) -> LabeledSequence {
        self.monoid.sequence(items).expect("labels in range")
    }
}

fn product(parts: &[&LabeledSequence]) -> LabeledSequence {
    let n = parts[0].exponents().len();
    LabeledSequence::from_exponents(
        (0..n)
            .map(|i| parts.iter().map(|p| p.exponents()[i]).sum())
            .collect(),
    )
}

fn param(name: &str, value: Option<u32>, min: u32, default: u32) -> Result<u32> {
    let v = value.unwrap_or(default);
    if v < min {
        return Err(Error::InvalidParameter(format!("{name} = {v} must be at least {min}")));
    }
    Ok(v)
}

/// Builds the monoid, element and factorizations of `case`.
pub fn prop34_witness(case: Case, params: CaseParams) -> Result<CaseWitness> {
    let rank = params.rank.map(|r| r as u32);
    if params.m.is_some() && !matches!(case, Case::C3 | Case::C4) {
        return Err(Error::InvalidParameter(format!("case {case} takes no m")));
    }
    if params.rank.is_some() && !matches!(case, Case::C1_2 | Case::C2_2) {
        return Err(Error::InvalidParameter(format!("case {case} takes no rank")));
    }
    let witness = |b: Builder,
                   u: Vec<LabeledSequence>,
                   v: Vec<LabeledSequence>,
                   expected_catenary: u32,
                   expected_scan: Option<(u32, BTreeSet<u32>)>| {
        CaseWitness {
            case,
            element: product(&u.iter().collect::<Vec<_>>()),
            factorizations: [u, v],
            monoid: b.monoid,
            expected_catenary,
            expected_scan,
        }
    };
    let exceptional = Some((9, BTreeSet::from([3])));
    Ok(match case {
        Case::C1_1 | Case::C2_1 => {
            let n = if case == Case::C1_1 { 2 } else { 3 };
            let group = AbelianGroup::cyclic(n)?;
            let g = group.element(&[1])?;
            let b = Builder::new(group, &[(g.clone(), 1)])?;
            let (p, q) = (b.prime(&g, 0), b.prime(&g, 1));
            let u = vec![b.seq(&[(p, n as u32)]), b.seq(&[(q, n as u32)])];
            let v = if n == 2 {
                vec![b.seq(&[(p, 1), (q, 1)]), b.seq(&[(p, 1), (q, 1)])]
            } else {
                vec![b.seq(&[(p, 2), (q, 1)]), b.seq(&[(p, 1), (q, 2)])]
            };
            witness(b, u, v, 2, None)
        }
        Case::C1_2 => {
            let r = param("rank", rank, 3, 3)? as usize;
            let group = AbelianGroup::new(&vec![2; r])?;
            let e = group.canonical_basis();
            let add = |a: &GroupElement, b: &GroupElement| group.add(a, b);
            let e0 = add(&add(&e[0], &e[1])?, &e[2])?;
            let (q1, q2, q3) = (add(&e[0], &e[1])?, add(&e[0], &e[2])?, add(&e[1], &e[2])?);
            let b = Builder::new(group.clone(), &[])?;
            let p = [e0, e[0].clone(), e[1].clone(), e[2].clone()].map(|g| b.prime(&g, 0));
            let q = [q1, q2, q3].map(|g| b.prime(&g, 0));
            let u = vec![
                b.seq(&[(p[0], 1), (p[1], 1), (p[2], 1), (p[3], 1)]),
                b.seq(&[(q[0], 1), (q[1], 1), (q[2], 1)]),
            ];
            let v = vec![
                b.seq(&[(p[1], 1), (p[2], 1), (q[0], 1)]),
                b.seq(&[(p[0], 1), (p[3], 1), (q[1], 1), (q[2], 1)]),
            ];
            witness(b, u, v, 2, None)
        }
        Case::C1_3 => {
            let group = AbelianGroup::new(&[2, 2])?;
            let e = group.canonical_basis();
            let e0 = group.add(&e[0], &e[1])?;
            let b = Builder::new(group, &[])?;
            let p = [e0, e[0].clone(), e[1].clone()].map(|g| b.prime(&g, 0));
            let w = b.seq(&[(p[0], 1), (p[1], 1), (p[2], 1)]);
            let u = p.iter().map(|&x| b.seq(&[(x, 2)])).collect();
            witness(b, u, vec![w.clone(), w], 3, exceptional)
        }
        Case::C2_2 => {
            let r = param("rank", rank, 2, 2)? as usize;
            let group = AbelianGroup::new(&vec![3; r])?;
            let e = group.canonical_basis();
            let e0 = group.add(&e[0], &e[1])?;
            let b = Builder::new(group.clone(), &[])?;
            let p2 = b.prime(&e[1], 0);
            let p1d = b.prime(&group.scale(2, &e[0])?, 0);
            let p2d = b.prime(&group.scale(2, &e[1])?, 0);
            let q = b.prime(&e0, 0);
            let u = vec![
                b.seq(&[(q, 1), (p1d, 1), (p2d, 1)]),
                b.seq(&[(q, 1), (p1d, 1), (p2, 2)]),
            ];
            let v = vec![
                b.seq(&[(p2, 1), (p2d, 1)]),
                b.seq(&[(q, 2), (p1d, 2), (p2, 1)]),
            ];
            witness(b, u, v, 2, None)
        }
        Case::C2_3 => {
            let group = AbelianGroup::cyclic(3)?;
            let g = group.element(&[1])?;
            let b = Builder::new(group.clone(), &[])?;
            let (p, q) = (b.prime(&g, 0), b.prime(&group.negate(&g)?, 0));
            let u = vec![b.seq(&[(p, 3)]), b.seq(&[(q, 3)])];
            let pq = b.seq(&[(p, 1), (q, 1)]);
            witness(b, u, vec![pq.clone(), pq.clone(), pq], 3, exceptional)
        }
        Case::C3 | Case::C4 => {
            let m = param("m", params.m, 2, 2)?;
            let order = if case == Case::C3 { 2 * m + 1 } else { 2 * m };
            let group = AbelianGroup::cyclic(order as u64)?;
            let g = group.element(&[1])?;
            let b = Builder::new(group.clone(), &[])?;
            let (p, q) = (b.prime(&g, 0), b.prime(&group.scale(2, &g)?, 0));
            let (u, v) = if case == Case::C3 {
                (
                    vec![b.seq(&[(p, 2 * m + 1)]), b.seq(&[(p, 1), (q, m)])],
                    vec![b.seq(&[(p, 2 * m - 1), (q, 1)]), b.seq(&[(q, m - 1), (p, 3)])],
                )
            } else {
                (
                    vec![b.seq(&[(p, 2 * m)]), b.seq(&[(q, m)])],
                    vec![b.seq(&[(p, 2 * m - 2), (q, 1)]), b.seq(&[(q, m - 1), (p, 2)])],
                )
            };
            witness(b, u, v, 2, None)
        }
    })
}

impl CaseWitness {
    /// Recomputes the fiber, `c(a)`, `ℛ(a)` and, where expected, a scan.
    pub fn replay(&self) -> Result<CaseReplay> {
        let f = LabeledFactorizer::new(&self.monoid)?;
        for z in &self.factorizations {
            if product(&z.iter().collect::<Vec<_>>()) != self.element {
                return Err(Error::InvalidWitness(format!(
                    "case {}: stated factorization does not multiply to a",
                    self.case
                )));
            }
        }
        let fiber = f.factorizations(&self.element)?;
        let mut contains = true;
        for z in &self.factorizations {
            let fz = f.factorization_of(z)?;
            contains &= fiber.index_of(&fz).is_some();
        }
        let catenary = fiber.catenary();
        let (scan_bound, ca, r) = match &self.expected_scan {
            Some((bound, _)) => {
                let report = scan(&self.monoid, *bound)?;
                (Some(*bound), Some(report.ca_observed()), Some(report.r_observed()))
            }
            None => (None, None, None),
        };
        let scan_ok = match &self.expected_scan {
            Some((_, expected)) => ca.as_ref() == Some(expected) && r.as_ref() == Some(expected),
            None => true,
        };
        Ok(CaseReplay {
            case: self.case,
            element: self.element.render(&self.monoid),
            fiber: fiber
                .members()
                .iter()
                .map(|z| f.render_factorization(z))
                .collect(),
            lengths: fiber.length_set().values().clone(),
            catenary,
            expected_catenary: self.expected_catenary,
            relation_distances: fiber.relation_distances(),
            contains_stated_factorizations: contains,
            scan_bound,
            ca_observed: ca,
            r_observed: r,
            passed: contains && fiber.len() > 1 && catenary == self.expected_catenary && scan_ok,
        })
    }
}
