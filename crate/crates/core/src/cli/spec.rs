//! Monoid specifications and their canonical JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::blockmonoid::LabeledMonoid;
use crate::constructions::{Component, ProductMonoid};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, DEFAULT_ELEMENT_CAP};
use crate::presented::{PresentedMonoid, DEFAULT_PRESENTED_CAP};

/// Bumped whenever atom enumeration or canonicalization changes.
pub const ALGORITHM_VERSION: &str = "krull-atoms/1";

/// A monoid description as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidSpec {
    Block(BlockSpec),
    Product(ProductSpec),
    Presented(PresentedSpec),
}

/// `{"group": [...], "primes": [{"class": [...], "count": k}, ...]}`.
/// Without `primes`, every class carries exactly one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub group: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<PrimeSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeSpec {
    pub class: Vec<i64>,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub product: Vec<MonoidSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentedSpec {
    pub atoms: usize,
    pub relations: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

/// A built monoid of any supported kind.
#[derive(Debug, Clone)]
pub enum Monoid {
    Labeled(LabeledMonoid),
    Presented(PresentedMonoid),
    Product(ProductMonoid),
}

impl MonoidSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Spec(format!(
                "not a block, product or presented monoid spec ({e})"
            ))
        })
    }

    /// Full block monoid `B(G)` over the group with the given moduli.
    pub fn full(moduli: &[u64]) -> Self {
        MonoidSpec::Block(BlockSpec {
            group: moduli.to_vec(),
            primes: None,
        })
    }

    /// Normal form: invariant factors, reduced and merged classes, sorted
    /// prime lists, nested products flattened, defaults dropped.
    pub fn canonical(&self) -> Result<MonoidSpec> {
        match self {
            MonoidSpec::Block(b) => Ok(MonoidSpec::Block(b.canonical()?)),
            MonoidSpec::Presented(p) => Ok(MonoidSpec::Presented(p.canonical())),
            MonoidSpec::Product(p) => {
                if p.product.is_empty() {
                    return Err(Error::Spec("a product needs at least one component".into()));
                }
                let mut flat = Vec::new();
                for c in &p.product {
                    match c.canonical()? {
                        MonoidSpec::Product(inner) => flat.extend(inner.product),
                        other => flat.push(other),
                    }
                }
                Ok(MonoidSpec::Product(ProductSpec { product: flat }))
            }
        }
    }

    /// Canonical JSON bytes: sorted keys, no whitespace, integers only.
    pub fn canonical_json(&self) -> Result<String> {
        let value = serde_json::to_value(self.canonical()?)?;
        Ok(serde_json::to_string(&value)?)
    }

    /// SHA-256 over the canonical JSON and [`ALGORITHM_VERSION`].
    pub fn hash(&self) -> Result<String> {
        let mut h = Sha256::new();
        h.update(self.canonical_json()?.as_bytes());
        h.update(b"\n");
        h.update(ALGORITHM_VERSION.as_bytes());
        Ok(hex::encode(h.finalize()))
    }

    pub fn build(&self) -> Result<Monoid> {
        match self.canonical()? {
            MonoidSpec::Block(b) => Ok(Monoid::Labeled(b.build()?)),
            MonoidSpec::Presented(p) => Ok(Monoid::Presented(p.build()?)),
            MonoidSpec::Product(p) => {
                let components = p
                    .product
                    .iter()
                    .map(|c| match c.build()? {
                        Monoid::Labeled(m) => Ok(Component::Labeled(m)),
                        Monoid::Presented(m) => Ok(Component::Presented(m)),
                        Monoid::Product(_) => unreachable!("canonical products are flat"),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Monoid::Product(ProductMonoid::new(components)?))
            }
        }
    }
}

impl BlockSpec {
    pub fn group(&self) -> Result<AbelianGroup> {
        AbelianGroup::new(&self.group)
    }

    fn canonical(&self) -> Result<BlockSpec> {
        let group = self.group()?;
        let factors = group.invariant_factors().to_vec();
        let Some(primes) = &self.primes else {
            return Ok(BlockSpec {
                group: factors,
                primes: None,
            });
        };
        if factors != self.group {
            return Err(Error::Spec(format!(
                "classes are read in invariant-factor coordinates; write the group as {factors:?}"
            )));
        }
        let mut merged: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
        for p in primes {
            let g = group.element(&p.class)?;
            if p.count > 0 {
                *merged.entry(g.coords().to_vec()).or_insert(0) += p.count;
            }
        }
        let full = group.order() <= DEFAULT_ELEMENT_CAP
            && merged.len() as u64 == group.order()
            && merged.values().all(|&k| k == 1);
        let primes = (!full).then(|| {
            merged
                .into_iter()
                .map(|(c, count)| PrimeSpec {
                    class: c.into_iter().map(|x| x as i64).collect(),
                    count,
                })
                .collect()
        });
        Ok(BlockSpec {
            group: factors,
            primes,
        })
    }

    fn build(&self) -> Result<LabeledMonoid> {
        let group = self.group()?;
        match &self.primes {
            None => LabeledMonoid::full(group),
            Some(primes) => {
                let classes = primes
                    .iter()
                    .map(|p| Ok((group.element(&p.class)?, p.count)))
                    .collect::<Result<Vec<_>>>()?;
                LabeledMonoid::new(group, classes)
            }
        }
    }
}

impl PresentedSpec {
    fn canonical(&self) -> PresentedSpec {
        let moves = self.moves.clone().filter(|m| *m != self.relations);
        let cap = self.cap.filter(|&c| c != DEFAULT_PRESENTED_CAP);
        PresentedSpec {
            atoms: self.atoms,
            relations: self.relations.clone(),
            moves,
            cap,
        }
    }

    fn build(&self) -> Result<PresentedMonoid> {
        PresentedMonoid::new(
            self.atoms,
            self.relations.clone(),
            self.moves.clone(),
            self.cap.unwrap_or(DEFAULT_PRESENTED_CAP),
        )
    }
}
