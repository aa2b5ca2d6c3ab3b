//! One step of the descent from a ℸ* witness for `ℓ` to one for `ℓ − 1`.

use serde::Serialize;

use super::LengthOracle;
use crate::blockmonoid::{enumerate_class_atoms, is_atom, ClassAtomTable, ClassSequence};
use crate::error::{Error, Result};
use crate::factorization::{FactorizationEngine, LengthSet, DEFAULT_FIBER_CAP};
use crate::group::{AbelianGroup, GroupElement, DEFAULT_ELEMENT_CAP};

/// Evidence produced by [`descent_step`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    /// The pair after ordering so that `|u1| ≥ 4`.
    pub u1: ClassSequence,
    pub u2: ClassSequence,
    pub ell: u32,
    /// The length-`ℓ` factorization of `u1·u2` that was split.
    pub factorization: Vec<ClassSequence>,
    pub g1: GroupElement,
    pub g2: GroupElement,
    pub u1_prime: ClassSequence,
    pub lengths_before: LengthSet,
    pub lengths_after: LengthSet,
    /// `min(L(u1′·u2) \ {2})`.
    pub next: u32,
}

impl DescentStep {
    /// `|u1′u2| = |u1u2| − 1`, no length of `u1′u2` lies in `[3, ℓ − 2]`,
    /// and `next ∈ {ℓ − 1} ∪ [ℓ, max_daleth]`.
    pub fn claims_hold(&self, max_daleth: u32) -> bool {
        let shorter = self.u1_prime.len() + 1 == self.u1.len();
        let gap = (3..self.ell.saturating_sub(1)).all(|l| !self.lengths_after.contains(l));
        shorter && gap && self.next + 1 >= self.ell && self.next <= max_daleth
    }
}

pub(crate) fn full_table(group: &AbelianGroup) -> Result<ClassAtomTable> {
    let elements = group.enumerate_elements(DEFAULT_ELEMENT_CAP)?;
    enumerate_class_atoms(group, &elements)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidWitness(msg.into())
}

/// Applies the swap `U1′ = (g1+g2)·g1⁻¹g2⁻¹·U1` to a pair of atoms over `G`.
///
/// Preconditions: `u1·u2` has a factorization of length `ℓ ≥ 4` and none with
/// length in `[3, ℓ − 1]`. The pair is swapped if `|u1| < 4`. `g1` and `g2`
/// come from the first two factors of the least length-`ℓ` factorization
/// that meet `u1`, after distributing `u1` greedily over the factors.
pub fn descent_step(
    group: &AbelianGroup,
    u1: &ClassSequence,
    u2: &ClassSequence,
    ell: u32,
) -> Result<DescentStep> {
    let table = full_table(group)?;
    descent_step_with_table(&table, u1, u2, ell)
}

/// [`descent_step`] with a precomputed atom table of the full group.
pub fn descent_step_with_table(
    table: &ClassAtomTable,
    u1: &ClassSequence,
    u2: &ClassSequence,
    ell: u32,
) -> Result<DescentStep> {
    let group = table.group();
    if table.support().len() as u64 != group.order() {
        return Err(invalid("descent needs the atom table of the full group"));
    }
    for u in [u1, u2] {
        if table.to_dense(u).is_none() || !is_atom(group, u)? {
            return Err(invalid(format!("{} is not an atom", render(u))));
        }
    }
    if ell < 4 {
        return Err(invalid(format!("ℓ = {ell} must be at least 4")));
    }
    let (u1, u2) = if u1.len() >= 4 { (u1, u2) } else { (u2, u1) };
    if u1.len() < 4 {
        return Err(invalid("neither atom has length at least 4"));
    }

    let dense = table.to_dense(&u1.concat(u2)).expect("full support");
    let engine = FactorizationEngine::new(dense.len(), table.dense_atoms().to_vec());
    let fiber = engine.factorizations(&dense, DEFAULT_FIBER_CAP)?;
    let lengths_before = fiber.length_set();
    if !lengths_before.contains(ell) {
        return Err(invalid(format!("u1·u2 has no factorization of length {ell}")));
    }
    if let Some(l) = (3..ell).find(|&l| lengths_before.contains(l)) {
        return Err(invalid(format!("u1·u2 has a factorization of length {l} < ℓ")));
    }
    let z = fiber
        .members()
        .iter()
        .find(|z| z.len() == ell)
        .expect("length present");
    let factors: Vec<ClassSequence> = z
        .parts()
        .iter()
        .flat_map(|&(a, k)| std::iter::repeat_n(table.atoms()[a].clone(), k as usize))
        .collect();

    // greedy split U1 = U1,1 ⋯ U1,ℓ with U1,i | Vi
    let mut remaining: Vec<(GroupElement, u64)> = u1.iter().map(|(g, k)| (g.clone(), k)).collect();
    let mut picked: Vec<GroupElement> = Vec::new();
    for v in &factors {
        let mut first_here = None;
        for (g, left) in remaining.iter_mut() {
            let take = (*left).min(v.multiplicity(g));
            if take > 0 {
                *left -= take;
                first_here.get_or_insert_with(|| g.clone());
            }
        }
        picked.extend(first_here);
        if picked.len() == 2 {
            break;
        }
    }
    if picked.len() < 2 {
        return Err(invalid("u1 lies inside a single factor"));
    }
    let (g1, g2) = (picked[0].clone(), picked[1].clone());

    let mut terms: Vec<GroupElement> = Vec::new();
    let mut skip = vec![g1.clone(), g2.clone()];
    for (g, k) in u1.iter() {
        for _ in 0..k {
            match skip.iter().position(|s| s == g) {
                Some(pos) => {
                    skip.remove(pos);
                }
                None => terms.push(g.clone()),
            }
        }
    }
    terms.push(group.add(&g1, &g2)?);
    let u1_prime = ClassSequence::from_terms(terms);
    if !is_atom(group, &u1_prime)? {
        return Err(invalid(format!("{} is not an atom", render(&u1_prime))));
    }

    let after = table.to_dense(&u1_prime.concat(u2)).expect("full support");
    let lengths_after = LengthOracle::new(table.dense_atoms()).lengths(&after)?;
    let next = lengths_after
        .min_beyond_two()
        .ok_or_else(|| invalid("L(u1′u2) = {2}"))?;
    Ok(DescentStep {
        u1: u1.clone(),
        u2: u2.clone(),
        ell,
        factorization: factors,
        g1,
        g2,
        u1_prime,
        lengths_before,
        lengths_after,
        next,
    })
}

fn render(s: &ClassSequence) -> String {
    s.iter()
        .map(|(g, k)| if k == 1 { g.to_string() } else { format!("{g}^{k}") })
        .collect::<Vec<_>>()
        .join("·")
}
