//! A built monoid with element syntax, rendering and a fiber source.
//!
//! Element syntax:
//! - block monoids: `;`-separated terms `coords[#copy][^k]`, e.g. `1^4;3^4`
//!   or `1,0#1^2;1,0^2`; `v:` followed by raw label exponents; `unit`;
//! - presented monoids: comma-separated exponents of the atoms `a1, …, am`,
//!   e.g. `1,1,1,0,0,0`;
//! - products: component elements separated by `|`.

use crate::blockmonoid::{ClassAtomTable, LabeledAtomTable, LabeledMonoid, LabeledSequence};
use crate::constructions::{Component, ProductMonoid};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, LabeledFactorizer};
use crate::invariants::FiberSource;
use crate::presented::PresentedMonoid;

use super::spec::Monoid;

pub enum Target {
    Labeled(Box<LabeledFactorizer>),
    Presented(PresentedMonoid),
    Product(ProductMonoid),
}

impl Target {
    /// Uses `class_table` for a block monoid when given.
    pub fn new(monoid: Monoid, class_table: Option<&ClassAtomTable>) -> Result<Self> {
        Ok(match monoid {
            Monoid::Labeled(m) => {
                let table = match class_table {
                    Some(t) => LabeledAtomTable::build(&m, t)?,
                    None => m.atom_table()?,
                };
                Target::Labeled(Box::new(LabeledFactorizer::with_table(&m, table)))
            }
            Monoid::Presented(p) => Target::Presented(p),
            Monoid::Product(p) => Target::Product(p),
        })
    }

    pub fn source(&self) -> &dyn FiberSource {
        match self {
            Target::Labeled(f) => f.as_ref(),
            Target::Presented(p) => p,
            Target::Product(p) => p,
        }
    }

    /// Atoms as vectors over the basis of [`parse_element`](Self::parse_element).
    pub fn atoms(&self) -> Vec<Vec<u32>> {
        match self {
            Target::Labeled(f) => f.table().dense_atoms(),
            Target::Presented(p) => unit_vectors(p.atom_count()),
            Target::Product(p) => p.atoms(),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Vec<u32>> {
        match self {
            Target::Labeled(f) => Ok(parse_labeled(f.monoid(), text)?.exponents().to_vec()),
            Target::Presented(p) => parse_vector(text, p.atom_count()),
            Target::Product(p) => {
                let parts: Vec<&str> = text.split('|').collect();
                if parts.len() != p.components().len() {
                    return Err(Error::Spec(format!(
                        "expected {} `|`-separated component elements",
                        p.components().len()
                    )));
                }
                let parsed = parts
                    .iter()
                    .zip(p.components())
                    .map(|(t, c)| match c {
                        Component::Labeled(m) => Ok(parse_labeled(m, t)?.exponents().to_vec()),
                        Component::Presented(q) => parse_vector(t, q.atom_count()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                p.element(&parsed)
            }
        }
    }

    /// Inverse of [`parse_element`](Self::parse_element).
    pub fn render_element(&self, element: &[u32]) -> String {
        match self {
            Target::Labeled(f) => render_labeled(f.monoid(), element),
            Target::Presented(_) => render_vector(element),
            Target::Product(p) => {
                let mut offset = 0;
                let mut parts = Vec::new();
                for c in p.components() {
                    let (len, text) = match c {
                        Component::Labeled(m) => {
                            let n = m.label_count();
                            (n, render_labeled(m, &element[offset..offset + n]))
                        }
                        Component::Presented(q) => {
                            let n = q.atom_count();
                            (n, render_vector(&element[offset..offset + n]))
                        }
                    };
                    offset += len;
                    parts.push(text);
                }
                parts.join("|")
            }
        }
    }

    /// Factors as `[atom]^k` joined by spaces; presented atoms are `a1`, `a2`, ….
    pub fn render_factorization(&self, z: &Factorization, atoms: &[Vec<u32>]) -> String {
        if z.is_empty() {
            return "unit".into();
        }
        z.parts()
            .iter()
            .map(|&(a, k)| {
                let body = match self {
                    Target::Presented(_) => format!("a{}", a + 1),
                    _ => format!("[{}]", self.render_element(&atoms[a])),
                };
                if k == 1 {
                    body
                } else {
                    format!("{body}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn unit_vectors(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

fn parse_vector(text: &str, len: usize) -> Result<Vec<u32>> {
    let v = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Spec(format!("bad exponent {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != len {
        return Err(Error::Spec(format!("expected {len} exponents, got {}", v.len())));
    }
    Ok(v)
}

fn render_vector(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Parses a zero-sum labeled sequence.
pub fn parse_labeled(monoid: &LabeledMonoid, text: &str) -> Result<LabeledSequence> {
    let text = text.trim();
    let seq = if let Some(raw) = text.strip_prefix("v:") {
        LabeledSequence::from_exponents(parse_vector(raw, monoid.label_count())?)
    } else if text.is_empty() || text == "unit" {
        LabeledSequence::from_exponents(vec![0; monoid.label_count()])
    } else {
        let mut items = Vec::new();
        for term in text.split(';') {
            let term = term.trim();
            let (body, k) = match term.split_once('^') {
                Some((b, k)) => (
                    b,
                    k.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Spec(format!("bad multiplicity in {term:?}")))?,
                ),
                None => (term, 1),
            };
            let (coords, copy) = match body.split_once('#') {
                Some((c, p)) => (
                    c,
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Spec(format!("bad copy index in {term:?}")))?,
                ),
                None => (body, 0),
            };
            let g = monoid.group().parse_element(coords)?;
            let slot = monoid
                .class_slot(&g)
                .ok_or_else(|| Error::Unliftable(g.to_string()))?;
            let label = monoid.label_index(slot, copy).ok_or_else(|| {
                Error::Spec(format!("class {g} has no prime with copy index {copy}"))
            })?;
            items.push((label, k));
        }
        monoid.sequence(&items)?
    };
    let sigma = seq.sigma(monoid)?;
    if sigma != monoid.group().zero() {
        return Err(Error::NotZeroSum(sigma.to_string()));
    }
    Ok(seq)
}

/// Renders label exponents in the syntax accepted by [`parse_labeled`].
pub fn render_labeled(monoid: &LabeledMonoid, exponents: &[u32]) -> String {
    let terms: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(l, &k)| {
            let label = monoid.labels()[l];
            let class = monoid.classes()[label.class_slot].coords();
            let mut s = class.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            if monoid.prime_counts()[label.class_slot] > 1 {
                s.push_str(&format!("#{}", label.copy));
            }
            if k > 1 {
                s.push_str(&format!("^{k}"));
            }
            s
        })
        .collect();
    if terms.is_empty() {
        "unit".into()
    } else {
        terms.join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::MonoidSpec;
    use crate::group::AbelianGroup;

    #[test]
    fn labeled_syntax_round_trips() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let classes = vec![
            (g.element(&[0, 1]).unwrap(), 1),
            (g.element(&[1, 0]).unwrap(), 2),
            (g.element(&[1, 1]).unwrap(), 1),
        ];
        let m = LabeledMonoid::new(g, classes).unwrap();
        let s = parse_labeled(&m, "1,0#1;1,0;0,1^2").unwrap();
        let text = render_labeled(&m, s.exponents());
        assert_eq!(parse_labeled(&m, &text).unwrap(), s);
        assert!(matches!(parse_labeled(&m, "1,0"), Err(Error::NotZeroSum(_))));
        assert!(parse_labeled(&m, "0,0").is_err());
        assert!(parse_labeled(&m, "1,0#2^2").is_err());
        assert_eq!(parse_labeled(&m, "unit").unwrap().len(), 0);
        assert_eq!(parse_labeled(&m, "v:2,0,0,0").unwrap().len(), 2);
    }

    #[test]
    fn product_elements_round_trip() {
        let spec = MonoidSpec::from_json(
            r#"{"product":[{"group":[4]},{"atoms":6,"relations":[[1,1,1,-4,0,0],[1,1,1,0,-1,-1]]}]}"#,
        )
        .unwrap();
        let t = Target::new(spec.build().unwrap(), None).unwrap();
        let e = t.parse_element("1^4;3^4|1,1,1,0,0,0").unwrap();
        assert_eq!(t.parse_element(&t.render_element(&e)).unwrap(), e);
        assert!(t.parse_element("1^4").is_err());
        let fiber = t.source().fiber(&e).unwrap();
        // |Z(a)| = 2 over C_4 and |Z(b)| = 3 in the presented component
        assert_eq!(fiber.len(), 2 * 3);
    }
}
