//! Direct products of labeled and presented monoids.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::blockmonoid::{LabeledMonoid, LabeledSequence};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, FiberSet, LabeledFactorizer, DEFAULT_FIBER_CAP};
use crate::invariants::{
    daleth_star, scan_source, zero_sum_elements, DalethStar, DalethWitness, FiberSource,
    ScanConfig, ScanReport,
};
use crate::presented::PresentedMonoid;

/// One factor of a [`ProductMonoid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Labeled(LabeledMonoid),
    Presented(PresentedMonoid),
}

#[derive(Debug, Clone)]
enum Engine {
    Labeled(Box<LabeledFactorizer>),
    Presented(PresentedMonoid),
}

impl Engine {
    fn new(component: &Component) -> Result<Self> {
        Ok(match component {
            Component::Labeled(m) => Engine::Labeled(Box::new(LabeledFactorizer::new(m)?)),
            Component::Presented(p) => Engine::Presented(p.clone()),
        })
    }

    fn basis_len(&self) -> usize {
        match self {
            Engine::Labeled(f) => f.monoid().label_count(),
            Engine::Presented(p) => p.atom_count(),
        }
    }

    fn atoms(&self) -> Vec<Vec<u32>> {
        match self {
            Engine::Labeled(f) => f.table().dense_atoms(),
            Engine::Presented(p) => (0..p.atom_count())
                .map(|i| (0..p.atom_count()).map(|j| u32::from(i == j)).collect())
                .collect(),
        }
    }

    fn fiber(&self, element: &[u32]) -> Result<FiberSet> {
        match self {
            Engine::Labeled(f) => f.factorizations(&LabeledSequence::from_exponents(element.to_vec())),
            Engine::Presented(p) => p.fiber(element),
        }
    }

    /// Elements of size at most `bound`, one per fiber, starting with the unit.
    fn elements(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = vec![vec![0; self.basis_len()]];
        match self {
            Engine::Labeled(f) => out.extend(zero_sum_elements(f.monoid(), bound, cap)?),
            Engine::Presented(p) => {
                let mut seen = BTreeSet::new();
                for y in p.elements_up_to(bound, cap)? {
                    let key = p.fiber(&y)?.element().to_vec();
                    if seen.insert(key) {
                        out.push(y);
                    }
                }
            }
        }
        Ok(out)
    }

    fn source(&self) -> &dyn FiberSource {
        match self {
            Engine::Labeled(f) => f.as_ref(),
            Engine::Presented(p) => p,
        }
    }
}

/// `H₁ × ⋯ × H_n`. Elements are concatenated component vectors; atom
/// indices of later components are shifted past those of earlier ones.
#[derive(Debug, Clone)]
pub struct ProductMonoid {
    components: Vec<Component>,
    engines: Vec<Engine>,
    basis_offsets: Vec<usize>,
    atom_offsets: Vec<usize>,
}

impl ProductMonoid {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("a product needs at least one component".into()));
        }
        let engines = components.iter().map(Engine::new).collect::<Result<Vec<_>>>()?;
        let mut basis_offsets = vec![0];
        let mut atom_offsets = vec![0];
        for e in &engines {
            basis_offsets.push(basis_offsets.last().unwrap() + e.basis_len());
            atom_offsets.push(atom_offsets.last().unwrap() + e.atoms().len());
        }
        Ok(ProductMonoid {
            components,
            engines,
            basis_offsets,
            atom_offsets,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Total number of basis coordinates.
    pub fn basis_len(&self) -> usize {
        *self.basis_offsets.last().unwrap()
    }

    /// Embeds a tuple of component elements.
    pub fn element(&self, parts: &[Vec<u32>]) -> Result<Vec<u32>> {
        if parts.len() != self.engines.len() {
            return Err(Error::Spec(format!(
                "expected {} component elements, got {}",
                self.engines.len(),
                parts.len()
            )));
        }
        let mut out = Vec::with_capacity(self.basis_len());
        for (p, e) in parts.iter().zip(&self.engines) {
            if p.len() != e.basis_len() {
                return Err(Error::Spec(format!(
                    "component element has {} coordinates, expected {}",
                    p.len(),
                    e.basis_len()
                )));
            }
            out.extend_from_slice(p);
        }
        Ok(out)
    }

    /// All atoms, embedded in the product basis.
    pub fn atoms(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (c, e) in self.engines.iter().enumerate() {
            for a in e.atoms() {
                let mut v = vec![0u32; self.basis_len()];
                v[self.basis_offsets[c]..self.basis_offsets[c + 1]].copy_from_slice(&a);
                out.push(v);
            }
        }
        out
    }

    fn split<'a>(&self, element: &'a [u32]) -> Result<Vec<&'a [u32]>> {
        if element.len() != self.basis_len() {
            return Err(Error::Spec(format!(
                "element has {} coordinates, expected {}",
                element.len(),
                self.basis_len()
            )));
        }
        Ok((0..self.engines.len())
            .map(|c| &element[self.basis_offsets[c]..self.basis_offsets[c + 1]])
            .collect())
    }

    /// Scan of component `c` on its own.
    pub fn component_scan(&self, c: usize, bound: u32) -> Result<ScanReport> {
        scan_source(self.engines[c].source(), bound, ScanConfig::default())
    }

    /// ℸ* of component `c`.
    pub fn component_daleth(&self, c: usize) -> Result<DalethStar> {
        match &self.components[c] {
            Component::Labeled(m) => daleth_star(m),
            Component::Presented(_) => {
                let e = &self.engines[c];
                daleth_from_pairs(&e.atoms(), |x| e.fiber(x))
            }
        }
    }

    /// ℸ* of the product from all pairs of product atoms.
    pub fn daleth(&self) -> Result<DalethStar> {
        daleth_from_pairs(&self.atoms(), |x| FiberSource::fiber(self, x))
    }
}

/// ℸ* from the fibers of `u·v` for every pair of `atoms`.
pub fn daleth_from_pairs(
    atoms: &[Vec<u32>],
    fiber: impl Fn(&[u32]) -> Result<FiberSet>,
) -> Result<DalethStar> {
    let mut witnesses = BTreeMap::new();
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            let uv: Vec<u32> = atoms[i].iter().zip(&atoms[j]).map(|(a, b)| a + b).collect();
            let lengths = fiber(&uv)?.length_set();
            if lengths.len() > 1 {
                let value = lengths.min_beyond_two().expect("two lengths");
                witnesses.entry(value).or_insert(DalethWitness {
                    first: i,
                    second: j,
                    lengths,
                });
            }
        }
    }
    Ok(DalethStar {
        values: witnesses.keys().copied().collect(),
        witnesses,
    })
}

impl FiberSource for ProductMonoid {
    /// Tuples of component elements, each of size at most `bound`.
    fn elements(&self, bound: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
        let lists = self
            .engines
            .iter()
            .map(|e| e.elements(bound, cap))
            .collect::<Result<Vec<_>>>()?;
        let total: u128 = lists.iter().map(|l| l.len() as u128).product();
        if total > cap as u128 {
            return Err(Error::CapExceeded(format!(
                "product scan would visit {total} elements (cap {cap})"
            )));
        }
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for list in &lists {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    list.iter().map(move |x| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(x);
                        v
                    })
                })
                .collect();
        }
        out.retain(|v| v.iter().any(|&k| k > 0));
        Ok(out)
    }

    /// `Z(a₁⋯a_n) = Z(a₁) × ⋯ × Z(a_n)`.
    fn fiber(&self, element: &[u32]) -> Result<FiberSet> {
        let parts = self.split(element)?;
        let fibers = parts
            .iter()
            .zip(&self.engines)
            .map(|(p, e)| e.fiber(p))
            .collect::<Result<Vec<_>>>()?;
        let size: u128 = fibers.iter().map(|f| f.len() as u128).product();
        if size > DEFAULT_FIBER_CAP as u128 {
            return Err(Error::CapExceeded(format!(
                "product fiber has {size} members (cap {DEFAULT_FIBER_CAP})"
            )));
        }
        let mut members = vec![Factorization::new(Vec::new())];
        let mut canonical = Vec::with_capacity(element.len());
        for (c, f) in fibers.iter().enumerate() {
            canonical.extend_from_slice(f.element());
            let offset = self.atom_offsets[c];
            members = members
                .iter()
                .flat_map(|z| f.members().iter().map(move |w| z.concat(&w.shifted(offset))))
                .collect();
        }
        Ok(FiberSet::new(canonical, members))
    }
}

/// Component and product invariants with the union laws checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub bound: u32,
    pub component_daleth: Vec<BTreeSet<u32>>,
    pub component_scans: Vec<ScanReport>,
    pub daleth: DalethStar,
    pub scan: ScanReport,
    /// Failed union laws for ℛ, Ca and ℸ*; empty on a healthy run.
    pub union_violations: Vec<String>,
}

/// Scans every component and the product (per-component bound `bound`),
/// computes ℸ* of each, and checks `ℛ`, `Ca` and `ℸ*` of the product
/// against the unions over the components.
pub fn product_invariants(product: &ProductMonoid, bound: u32) -> Result<ProductReport> {
    let n = product.components().len();
    let component_scans = (0..n)
        .map(|c| product.component_scan(c, bound))
        .collect::<Result<Vec<_>>>()?;
    let component_daleth = (0..n)
        .map(|c| product.component_daleth(c).map(|d| d.values))
        .collect::<Result<Vec<_>>>()?;
    let daleth = product.daleth()?;
    let scan = scan_source(product, bound, ScanConfig::default())?;

    let union = |f: &dyn Fn(&ScanReport) -> BTreeSet<u32>| -> BTreeSet<u32> {
        component_scans.iter().flat_map(f).collect()
    };
    let mut union_violations = Vec::new();
    let checks = [
        ("ℛ", scan.r_observed(), union(&ScanReport::r_observed)),
        ("Ca", scan.ca_observed(), union(&ScanReport::ca_observed)),
        (
            "ℸ*",
            daleth.values.clone(),
            component_daleth.iter().flatten().copied().collect(),
        ),
    ];
    for (name, product_set, union_set) in checks {
        if product_set != union_set {
            union_violations.push(format!(
                "{name}: product {product_set:?} differs from union {union_set:?}"
            ));
        }
    }
    Ok(ProductReport {
        bound,
        component_daleth,
        component_scans,
        daleth,
        scan,
        union_violations,
    })
}
