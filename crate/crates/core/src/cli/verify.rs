//! Theorem-verification suites behind `krull verify`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blockmonoid::{davenport, LabeledMonoid, LabeledSequence};
use crate::constructions::{
    cyclic_pm_monoid, example_231, product_invariants, prop34_witness, realize_catenary_set,
    two_prime_c2_monoid, Case, CaseParams, Component, ProductMonoid,
};
use crate::error::{Error, Result};
use crate::factorization::LabeledFactorizer;
use crate::group::{groups_of_order, AbelianGroup, DEFAULT_ELEMENT_CAP};
use crate::invariants::{
    catenary_monoid, daleth_star, scan, scan_source, verify_daleth_interval, CatenaryStatus,
    FiberSource, ScanConfig, ScanReport,
};
use crate::presented::make_example_233;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Prop33,
    Prop32,
    Thm11,
    Prop34,
    Example231,
    Example233,
    Davenport,
    Elasticity,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Prop33,
        Suite::Prop32,
        Suite::Thm11,
        Suite::Prop34,
        Suite::Example231,
        Suite::Example233,
        Suite::Davenport,
        Suite::Elasticity,
        Suite::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop33 => "prop33",
            Suite::Prop32 => "prop32",
            Suite::Thm11 => "thm11",
            Suite::Prop34 => "prop34",
            Suite::Example231 => "example231",
            Suite::Example233 => "example233",
            Suite::Davenport => "davenport",
            Suite::Elasticity => "elasticity",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Spec(format!("unknown suite {s:?}")))
    }
}

/// Parses `c4`, `c3x3` or `C2x2x2`.
pub fn parse_group_name(name: &str) -> Result<AbelianGroup> {
    let body = name
        .trim()
        .strip_prefix(['c', 'C'])
        .ok_or_else(|| Error::Spec(format!("group name {name:?} must start with c")))?;
    let moduli = body
        .split('x')
        .map(|m| m.parse::<u64>().map_err(|_| Error::Spec(format!("bad group name {name:?}"))))
        .collect::<Result<Vec<_>>>()?;
    AbelianGroup::new(&moduli)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest group order for `prop33` and `davenport`.
    pub max_order: u64,
    /// Groups for `thm11`; the eight default groups when `None`.
    pub groups: Option<Vec<AbelianGroup>>,
    /// Minimum scan bound for `thm11`; the effective bound is at least `2·D(G)`.
    pub bound: Option<u32>,
    /// Seed for the random products of `properties`.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_order: 16,
            groups: None,
            bound: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

#[derive(Default)]
struct Collector(Vec<Assertion>);

impl Collector {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.0.push(Assertion {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// Criterion-9 properties of one scan.
    fn scan_properties(&mut self, label: &str, report: &ScanReport) {
        let mut problems = report.violations.clone();
        problems.extend(report.monoid_law_violations());
        self.check(
            format!("{label}: scan properties"),
            problems.is_empty(),
            json!({
                "bound": report.bound,
                "elements_scanned": report.elements_scanned,
                "violations": problems,
            }),
        );
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            passed: self.0.iter().all(|a| a.passed),
            assertions: self.0,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut c = Collector::default();
    match suite {
        Suite::Prop33 => prop33(&mut c, opts)?,
        Suite::Prop32 => prop32(&mut c)?,
        Suite::Thm11 => thm11(&mut c, opts)?,
        Suite::Prop34 => prop34(&mut c)?,
        Suite::Example231 => ex231(&mut c)?,
        Suite::Example233 => ex233(&mut c)?,
        Suite::Davenport => davenport_suite(&mut c, opts)?,
        Suite::Elasticity => elasticity(&mut c)?,
        Suite::Properties => properties(&mut c, opts)?,
    }
    Ok(c.finish(suite))
}

fn set(s: &BTreeSet<u32>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn prop33(c: &mut Collector, opts: &VerifyOptions) -> Result<()> {
    for order in 3..=opts.max_order {
        for g in groups_of_order(order) {
            let interval = verify_daleth_interval(&LabeledMonoid::full(g.clone())?)?;
            let min3 = interval.values.first() == Some(&3);
            c.check(
                format!("{g}: ℸ* = [3, max ℸ*]"),
                interval.holds && min3,
                json!({"daleth_star": set(&interval.values), "interval": interval.interval}),
            );
        }
    }
    Ok(())
}

fn prop32(c: &mut Collector) -> Result<()> {
    for target in [BTreeSet::from([2, 3, 5]), BTreeSet::from([4])] {
        let product = realize_catenary_set(&target)?;
        let bound = 2 * target.last().copied().unwrap_or(0);
        let report = product_invariants(&product, bound)?;
        let expected_daleth: BTreeSet<u32> = target.iter().copied().filter(|&v| v != 2).collect();
        let label = format!("C = {target:?}");
        c.check(
            format!("{label}: ℸ* = C \\ {{2}}"),
            report.daleth.values == expected_daleth,
            json!({"daleth_star": set(&report.daleth.values)}),
        );
        let ca = report.scan.ca_observed();
        let r = report.scan.r_observed();
        c.check(
            format!("{label}: Ca = ℛ = C at bound {bound}"),
            ca == target && r == target,
            json!({"ca_observed": set(&ca), "r_observed": set(&r)}),
        );
        c.check(
            format!("{label}: union laws"),
            report.union_violations.is_empty(),
            json!({"violations": report.union_violations}),
        );
        c.scan_properties(&label, &report.scan);
        for (i, s) in report.component_scans.iter().enumerate() {
            c.scan_properties(&format!("{label} component {i}"), s);
        }
    }
    Ok(())
}

pub fn default_thm11_groups() -> Vec<AbelianGroup> {
    [&[4][..], &[5], &[6], &[7], &[8], &[2, 2, 2], &[3, 3], &[2, 4]]
        .iter()
        .map(|m| AbelianGroup::new(m).expect("valid moduli"))
        .collect()
}

fn thm11(c: &mut Collector, opts: &VerifyOptions) -> Result<()> {
    let groups = opts.groups.clone().unwrap_or_else(default_thm11_groups);
    for g in groups {
        let m = LabeledMonoid::full(g.clone())?;
        let d = m.class_atoms()?.davenport() as u32;
        if d < 4 || d as u64 != g.d_star() {
            c.check(
                format!("{g}: D(G) = D*(G) ≥ 4"),
                false,
                json!({"davenport": d, "d_star": g.d_star(), "note": "outside the theorem's scope"}),
            );
            continue;
        }
        let bound = opts.bound.unwrap_or(0).max(2 * d);
        let daleth = daleth_star(&m)?;
        let max = daleth.max().unwrap_or(0);
        let report = scan(&m, bound)?;
        let cat = catenary_monoid(&m, Some(&report))?;
        let r = report.r_observed();
        let delta = report.delta_observed();
        c.check(
            format!("{g}: max ℸ* = c(H)"),
            cat.status == CatenaryStatus::ExactByTheorem && cat.value == max,
            json!({"max_daleth": max, "catenary": cat}),
        );
        let mut needed = daleth.values.clone();
        needed.insert(2);
        c.check(
            format!("{g}: ℸ* ∪ {{2}} ⊆ ℛ at bound {bound}"),
            needed.is_subset(&r),
            json!({"daleth_star": set(&daleth.values), "r_observed": set(&r)}),
        );
        c.check(
            format!("{g}: ℛ ⊆ [2, max ℸ*]"),
            r.iter().all(|&x| (2..=max).contains(&x)),
            json!({"r_observed": set(&r), "max_daleth": max}),
        );
        let top = delta.last().map(|&x| x + 2);
        c.check(
            format!("{g}: 2 + max Δ = max ℸ*"),
            top == Some(max),
            json!({"delta_observed": set(&delta), "max_daleth": max}),
        );
        c.scan_properties(&g.to_string(), &report);
    }
    Ok(())
}

fn prop34(c: &mut Collector) -> Result<()> {
    for case in Case::ALL {
        let witness = prop34_witness(case, CaseParams::default())?;
        let replay = witness.replay()?;
        let exceptional = witness.expected_scan.is_some();
        let catenary_ok = exceptional || replay.catenary == 2;
        c.check(
            format!("case {case}: witness replays"),
            replay.passed && catenary_ok,
            serde_json::to_value(&replay)?,
        );
        if let Some((bound, _)) = &witness.expected_scan {
            let report = scan(&witness.monoid, *bound)?;
            c.scan_properties(&format!("case {case}"), &report);
        }
    }
    Ok(())
}

fn ex231(c: &mut Collector) -> Result<()> {
    let m = example_231(2, 3)?;
    let atoms = m.class_atoms()?.len();
    let daleth = daleth_star(&m)?;
    let report = scan(&m, 9)?;
    c.check(
        "(r, n) = (2, 3): r + 2 atoms",
        atoms == 4,
        json!({"atoms": atoms}),
    );
    c.check(
        "(r, n) = (2, 3): ℸ* = ∅ and Δ = ∅ at bound 9",
        daleth.values.is_empty() && report.delta_observed().is_empty(),
        json!({"daleth_star": set(&daleth.values), "delta_observed": set(&report.delta_observed())}),
    );
    c.scan_properties("(r, n) = (2, 3)", &report);

    let m = example_231(2, 4)?;
    let atoms = m.class_atoms()?.len();
    let report = scan(&m, 12)?;
    c.check(
        "(r, n) = (2, 4): r + 2 atoms",
        atoms == 4,
        json!({"atoms": atoms}),
    );
    c.check(
        "(r, n) = (2, 4): 1 ∈ Δ at bound 12",
        report.delta_observed().contains(&1),
        json!({"delta_observed": set(&report.delta_observed()), "witness": report.delta.get(&1)}),
    );
    c.scan_properties("(r, n) = (2, 4)", &report);
    Ok(())
}

fn ex233(c: &mut Collector) -> Result<()> {
    let p = make_example_233();
    let y = [1, 1, 1, 0, 0, 0];
    let fiber = p.fiber(&y)?;
    let members: BTreeSet<Vec<u32>> = fiber
        .members()
        .iter()
        .map(|z| (0..6).map(|i| z.multiplicity(i)).collect())
        .collect();
    let stated: BTreeSet<Vec<u32>> = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 4, 0, 0], [0, 0, 0, 0, 1, 1]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    c.check(
        "Z(u₁u₂u₃) = {u₁u₂u₃, u₄⁴, vw}",
        members == stated,
        json!({"fiber": members}),
    );
    c.check(
        "c(u₁u₂u₃) = 4 and ℛ(u₁u₂u₃) = {3, 4}",
        fiber.catenary() == 4 && fiber.relation_distances() == BTreeSet::from([3, 4]),
        json!({"catenary": fiber.catenary(), "relation_distances": set(&fiber.relation_distances())}),
    );
    let report = scan_source(&p, 8, ScanConfig::default())?;
    c.check(
        "scan at coordinate sum ≤ 8: Ca = {4}, ℛ = {3, 4}",
        report.ca_observed() == BTreeSet::from([4]) && report.r_observed() == BTreeSet::from([3, 4]),
        json!({"ca_observed": set(&report.ca_observed()), "r_observed": set(&report.r_observed())}),
    );
    c.scan_properties("Example presented monoid", &report);

    let mut fibers: Vec<Vec<u32>> = vec![y.to_vec()];
    let mut seen = BTreeSet::new();
    for e in p.elements(8, ScanConfig::default().max_elements)? {
        if seen.insert(p.fiber(&e)?.element().to_vec()) {
            fibers.push(e);
        }
    }
    let incomplete: Vec<Vec<u32>> = fibers
        .par_iter()
        .map(|e| p.verify_fiber_complete(e, 4).map(|ok| (!ok).then(|| e.clone())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    c.check(
        "every fiber used passes the box oracle at margin 4",
        incomplete.is_empty(),
        json!({"fibers_checked": fibers.len(), "incomplete": incomplete}),
    );
    Ok(())
}

fn davenport_suite(c: &mut Collector, opts: &VerifyOptions) -> Result<()> {
    for order in 2..=opts.max_order {
        for g in groups_of_order(order) {
            if !(g.is_p_group() || g.rank() <= 2) {
                continue;
            }
            let d = davenport(&g, &g.enumerate_elements(DEFAULT_ELEMENT_CAP)?)?;
            c.check(
                format!("{g}: D(G) = D*(G)"),
                d == g.d_star() && d <= g.order(),
                json!({"davenport": d, "d_star": g.d_star(), "order": g.order()}),
            );
        }
    }
    Ok(())
}

fn elasticity(c: &mut Collector) -> Result<()> {
    for n in 3..=7u32 {
        let m = cyclic_pm_monoid(n as u64)?;
        let f = LabeledFactorizer::new(&m)?;
        let u_minus_u = LabeledSequence::from_exponents(vec![n, n]);
        let rho = f.factorizations(&u_minus_u)?.length_set().elasticity()?;
        let expected = Ratio::new(n as u64, 2);
        let report = scan_source(&f, 2 * n, ScanConfig::default())?;
        let max = report.max_elasticity_ratio();
        c.check(
            format!("C_{n}: ρ(L(U(−U))) = {n}/2 = max ρ at bound {}", 2 * n),
            rho == expected && max == Some(expected),
            json!({"rho": rho.to_string(), "max_observed": max.map(|r| r.to_string())}),
        );
        c.scan_properties(&format!("C_{n} ±g"), &report);
    }
    Ok(())
}

fn random_component(rng: &mut ChaCha8Rng) -> Result<Component> {
    let pool: Vec<Box<dyn Fn() -> Result<Component>>> = vec![
        Box::new(|| Ok(Component::Labeled(cyclic_pm_monoid(3)?))),
        Box::new(|| Ok(Component::Labeled(cyclic_pm_monoid(4)?))),
        Box::new(|| Ok(Component::Labeled(cyclic_pm_monoid(5)?))),
        Box::new(|| Ok(Component::Labeled(two_prime_c2_monoid()))),
        Box::new(|| Ok(Component::Labeled(LabeledMonoid::full(AbelianGroup::cyclic(3)?)?))),
        Box::new(|| Ok(Component::Labeled(example_231(2, 3)?))),
        Box::new(|| Ok(Component::Presented(make_example_233()))),
    ];
    pool.choose(rng).expect("nonempty pool")()
}

fn properties(c: &mut Collector, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..2 {
        let product = ProductMonoid::new(vec![random_component(&mut rng)?, random_component(&mut rng)?])?;
        let report = product_invariants(&product, 6)?;
        let label = format!("random product {k}");
        c.check(
            format!("{label}: union laws for ℛ, Ca and ℸ*"),
            report.union_violations.is_empty(),
            json!({
                "seed": opts.seed,
                "component_daleth": report.component_daleth,
                "daleth_star": set(&report.daleth.values),
                "r_observed": set(&report.scan.r_observed()),
                "ca_observed": set(&report.scan.ca_observed()),
                "violations": report.union_violations,
            }),
        );
        c.scan_properties(&label, &report.scan);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("prop99".parse::<Suite>().is_err());
        assert_eq!(parse_group_name("c3x3").unwrap(), AbelianGroup::new(&[3, 3]).unwrap());
        assert!(parse_group_name("z4").is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let opts = VerifyOptions::default();
        for s in [Suite::Example231, Suite::Example233, Suite::Prop34, Suite::Properties] {
            let r = run_suite(s, &opts).unwrap();
            assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
