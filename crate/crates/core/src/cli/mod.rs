//! Command-line front end: monoid specs, reports, the atom cache and the
//! verification suites.
//!
//! Every command emits one JSON report with a top-level `"format": 1`.
//! Exit codes: 0 success, 1 assertion failure, 2 usage or spec error,
//! 3 resource cap.

pub mod cache;
pub mod spec;
pub mod target;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::blockmonoid::{ClassAtomTable, ClassSequence};
use crate::constructions::{
    product_invariants, prop34_witness, realize_catenary_set, Case, CaseParams, ProductMonoid,
};
use crate::error::{Error, Result};
use crate::factorization::FiberSet;
use crate::group::AbelianGroup;
use crate::invariants::{
    invariant_report, scan_source, star_condition, DalethStar, ScanConfig,
    ScanReport, Witness,
};
use crate::constructions::daleth_from_pairs;

use cache::{AtomCache, CacheStatus};
use spec::{BlockSpec, Monoid, MonoidSpec, PresentedSpec, PrimeSpec, ProductSpec};
use target::{render_labeled, Target};
use verify::{parse_group_name, run_suite, Suite, VerifyOptions};

pub const FORMAT: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest group order for which `group-info` enumerates `D(G)`.
const GROUP_INFO_DAVENPORT_CAP: u64 = 32;

#[derive(Debug, Parser)]
#[command(name = "krull", version, about = "Factorization invariants of Krull monoids")]
pub struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MonoidArgs {
    /// Monoid spec: a JSON file or inline JSON.
    #[arg(long, conflicts_with_all = ["group", "presented"])]
    monoid: Option<String>,
    /// Group moduli such as `2,4`; the full block monoid unless `--subset`.
    #[arg(long, conflicts_with = "presented")]
    group: Option<String>,
    /// Classes separated by `;`, e.g. `1;4`, one prime each.
    #[arg(long, requires = "group")]
    subset: Option<String>,
    /// Presented-monoid spec: a JSON file or inline JSON.
    #[arg(long)]
    presented: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariant factors, order, exponent, D*(G) and D(G).
    GroupInfo {
        #[arg(long)]
        group: String,
    },
    /// Atom table of a monoid.
    Atoms {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Also list the labeled atoms.
        #[arg(long)]
        labeled: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Bypass the on-disk atom cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Fiber, lengths, Δ, ρ, c and ℛ of one element.
    Analyze {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// ℸ*, bounded scans for Δ, Ca and ℛ, and c(H).
    Invariants {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Scan bound; defaults to 2·D(G₀) for block monoids and 8 otherwise.
        #[arg(long)]
        bound: Option<u32>,
        /// Compute ℸ* exactly from all pairs of atoms.
        #[arg(long)]
        exact_daleth: bool,
    },
    /// Builds a monoid with Ca = ℛ = SET and checks it by a scan.
    Realize {
        /// Comma-separated integers ≥ 2.
        #[arg(long)]
        set: String,
        /// Scan bound; defaults to 2·max(SET).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Replays a witness for one of the cases 1.1–1.3, 2.1–2.3, 3, 4.
    Witness {
        #[arg(long)]
        case: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Runs a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        /// Groups such as `c4,c5,c3x3`.
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Inspects or clears the atom cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
enum CacheAction {
    Ls,
    Purge,
}

/// A finished command: its report and whether an assertion failed.
struct Outcome {
    report: Value,
    text: Option<String>,
    failed: bool,
}

fn report(command: &str, spec: Option<&MonoidSpec>, parameters: Value, results: Value) -> Result<Value> {
    let (spec_value, hash) = match spec {
        Some(s) => (serde_json::to_value(s.canonical()?)?, Value::String(s.hash()?)),
        None => (Value::Null, Value::Null),
    };
    Ok(json!({
        "format": FORMAT,
        "tool": "krull",
        "version": VERSION,
        "command": command,
        "spec": spec_value,
        "spec_hash": hash,
        "parameters": parameters,
        "results": results,
    }))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    let outcome = dispatch(&cli.command)?;
    let text = match outcome.text {
        Some(t) => t,
        None => serde_json::to_string_pretty(&outcome.report)? + "\n",
    };
    match &cli.report {
        Some(path) => cache::write_atomic(path, text.as_bytes())?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(if outcome.failed { 1 } else { 0 })
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::GroupInfo { group } => group_info(group),
        Command::Atoms {
            monoid,
            labeled,
            format,
            no_cache,
        } => atoms(monoid, *labeled, *format, *no_cache),
        Command::Analyze { monoid, element } => analyze(monoid, element),
        Command::Invariants {
            monoid,
            bound,
            exact_daleth,
        } => invariants(monoid, *bound, *exact_daleth),
        Command::Realize { set, bound } => realize(set, *bound),
        Command::Witness { case, m, rank } => witness(case, *m, *rank),
        Command::Verify {
            suite,
            max_order,
            groups,
            bound,
            seed,
        } => verify_cmd(suite, *max_order, groups.as_deref(), *bound, *seed),
        Command::Cache { action } => cache_cmd(action),
    }
}

fn ok(report: Value) -> Outcome {
    Outcome {
        report,
        text: None,
        failed: false,
    }
}

fn read_json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

impl MonoidArgs {
    fn spec(&self) -> Result<MonoidSpec> {
        if let Some(m) = &self.monoid {
            return MonoidSpec::from_json(&read_json_arg(m)?);
        }
        if let Some(p) = &self.presented {
            let spec: PresentedSpec = serde_json::from_str(&read_json_arg(p)?)
                .map_err(|e| Error::Spec(format!("presented spec: {e}")))?;
            return Ok(MonoidSpec::Presented(spec));
        }
        let Some(g) = &self.group else {
            return Err(Error::Spec("one of --monoid, --group or --presented is required".into()));
        };
        let group = AbelianGroup::parse(g)?;
        let primes = match &self.subset {
            None => None,
            Some(s) => Some(
                s.split(';')
                    .map(|c| {
                        let e = group.parse_element(c)?;
                        Ok(PrimeSpec {
                            class: e.coords().iter().map(|&x| x as i64).collect(),
                            count: 1,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(MonoidSpec::Block(BlockSpec {
            group: group.invariant_factors().to_vec(),
            primes,
        }))
    }
}

fn ratio_json(r: Ratio<u64>) -> Value {
    json!({"numerator": r.numer(), "denominator": r.denom(), "text": r.to_string()})
}

fn set_json(s: &BTreeSet<u32>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn render_class(seq: &ClassSequence) -> String {
    let terms: Vec<String> = seq
        .iter()
        .map(|(g, k)| {
            let c = g.coords().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            if k > 1 {
                format!("{c}^{k}")
            } else {
                c
            }
        })
        .collect();
    if terms.is_empty() {
        "unit".into()
    } else {
        terms.join(";")
    }
}

/// Block tables come from the cache unless disabled.
fn load_target(spec: &MonoidSpec, use_cache: bool) -> Result<(Target, CacheStatus)> {
    match spec.canonical()? {
        MonoidSpec::Block(b) if use_cache => {
            let (table, status) = AtomCache::from_env().class_atoms(&b)?;
            Ok((Target::new(spec.build()?, Some(&table))?, status))
        }
        _ => Ok((Target::new(spec.build()?, None)?, CacheStatus::Disabled)),
    }
}

fn group_info(text: &str) -> Result<Outcome> {
    let g = AbelianGroup::parse(text)?;
    let davenport = if g.order() <= GROUP_INFO_DAVENPORT_CAP {
        let elements = g.enumerate_elements(GROUP_INFO_DAVENPORT_CAP)?;
        Some(crate::blockmonoid::davenport(&g, &elements)?)
    } else {
        None
    };
    let results = json!({
        "group": g.to_string(),
        "invariant_factors": g.invariant_factors(),
        "order": g.order(),
        "exponent": g.exponent(),
        "rank": g.rank(),
        "p_group": g.is_p_group(),
        "d_star": g.d_star(),
        "davenport": davenport,
        "catenary_theorem_applies": star_condition(&g)?,
    });
    Ok(ok(report(
        "group-info",
        None,
        json!({"group": g.invariant_factors()}),
        results,
    )?))
}

fn atoms(args: &MonoidArgs, labeled: bool, format: OutputFormat, no_cache: bool) -> Result<Outcome> {
    let spec = args.spec()?;
    let canonical = spec.canonical()?;
    let parameters = json!({"labeled": labeled, "cache": !no_cache});
    let (results, rows) = match &canonical {
        MonoidSpec::Block(b) => {
            let (table, status) = if no_cache {
                (cache::uncached_class_atoms(b)?, CacheStatus::Disabled)
            } else {
                AtomCache::from_env().class_atoms(b)?
            };
            block_atoms(&spec, &table, status, labeled)?
        }
        _ => {
            let t = Target::new(spec.build()?, None)?;
            let atoms = t.atoms();
            let rendered: Vec<String> = atoms.iter().map(|a| t.render_element(a)).collect();
            let rows = rendered
                .iter()
                .enumerate()
                .map(|(i, a)| format!("{i}\t\t{a}"))
                .collect();
            (json!({"count": atoms.len(), "atoms": rendered}), rows)
        }
    };
    let text = match format {
        OutputFormat::Json => None,
        OutputFormat::Tsv => {
            let mut out = String::from("index\tlength\tatom\n");
            for r in rows {
                out.push_str(&r);
                out.push('\n');
            }
            Some(out)
        }
    };
    Ok(Outcome {
        report: report("atoms", Some(&spec), parameters, results)?,
        text,
        failed: false,
    })
}

fn block_atoms(
    spec: &MonoidSpec,
    table: &ClassAtomTable,
    status: CacheStatus,
    labeled: bool,
) -> Result<(Value, Vec<String>)> {
    let rows = table
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| format!("{i}\t{}\t{}", a.len(), render_class(a)))
        .collect();
    let mut results = json!({
        "group": table.group().invariant_factors(),
        "support": table.support(),
        "count": table.len(),
        "atoms": table.atoms(),
        "davenport": table.davenport(),
        "d_star": table.group().d_star(),
        "cache": status,
    });
    if labeled {
        let Monoid::Labeled(m) = spec.build()? else {
            unreachable!("block spec")
        };
        let lifted = crate::blockmonoid::LabeledAtomTable::build(&m, table)?;
        let list: Vec<String> = lifted
            .atoms()
            .iter()
            .map(|a| render_labeled(&m, a.exponents()))
            .collect();
        results["labeled_count"] = json!(list.len());
        results["labeled_atoms"] = json!(list);
    }
    Ok((results, rows))
}

/// Per-element report; witness pairs index into `factorizations`.
pub fn fiber_json(t: &Target, atoms: &[Vec<u32>], element: &[u32], fiber: &FiberSet) -> Result<Value> {
    let lengths = fiber.length_set();
    let analysis = fiber.analyze();
    let render = |i: usize| t.render_factorization(&fiber.members()[i], atoms);
    let pair = |(i, j): (usize, usize)| json!({"first": render(i), "second": render(j), "distance": fiber.distance(i, j)});
    let mut by_len: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, z) in fiber.members().iter().enumerate() {
        by_len.entry(z.len()).or_insert(i);
    }
    let ls: Vec<(u32, usize)> = by_len.into_iter().collect();
    let mut delta_witnesses = BTreeMap::new();
    for w in ls.windows(2) {
        delta_witnesses
            .entry((w[1].0 - w[0].0).to_string())
            .or_insert_with(|| json!({"first": render(w[0].1), "second": render(w[1].1)}));
    }
    let relation_witnesses: BTreeMap<String, Value> = analysis
        .relation_distances
        .iter()
        .map(|(&d, &p)| (d.to_string(), pair(p)))
        .collect();
    Ok(json!({
        "element": t.render_element(element),
        "fiber_size": fiber.len(),
        "factorizations": (0..fiber.len()).map(render).collect::<Vec<_>>(),
        "lengths": set_json(lengths.values()),
        "delta": set_json(&lengths.delta()),
        "elasticity": ratio_json(lengths.elasticity()?),
        "catenary": analysis.catenary,
        "relation_distances": analysis.relation_distances.keys().collect::<Vec<_>>(),
        "witnesses": {
            "catenary": analysis.catenary_pair.map(pair),
            "relation_distances": relation_witnesses,
            "delta": delta_witnesses,
        },
    }))
}

fn analyze(args: &MonoidArgs, element: &str) -> Result<Outcome> {
    let spec = args.spec()?;
    let (t, _) = load_target(&spec, true)?;
    let y = t.parse_element(element)?;
    let fiber = t.source().fiber(&y)?;
    let results = fiber_json(&t, &t.atoms(), &y, &fiber)?;
    Ok(ok(report(
        "analyze",
        Some(&spec),
        json!({"element": element}),
        results,
    )?))
}

fn witness_json(t: &Target, atoms: &[Vec<u32>], w: &Witness) -> Value {
    json!({
        "element": t.render_element(&w.element),
        "first": t.render_factorization(&w.first, atoms),
        "second": t.render_factorization(&w.second, atoms),
    })
}

/// Scan results with a replayable witness per value.
pub fn scan_json(t: &Target, atoms: &[Vec<u32>], s: &ScanReport) -> Value {
    let map = |m: &BTreeMap<u32, Witness>| -> BTreeMap<String, Value> {
        m.iter().map(|(k, w)| (k.to_string(), witness_json(t, atoms, w))).collect()
    };
    json!({
        "bound": s.bound,
        "status": "lower-bound",
        "elements_scanned": s.elements_scanned,
        "multi_factorization_elements": s.multi_factorization_elements,
        "delta_observed": set_json(&s.delta_observed()),
        "ca_observed": set_json(&s.ca_observed()),
        "r_observed": set_json(&s.r_observed()),
        "max_elasticity": s.max_elasticity_ratio().map(ratio_json),
        "witnesses": {
            "delta": map(&s.delta),
            "catenary": map(&s.catenary),
            "relation_distances": map(&s.relations),
            "elasticity": s.max_elasticity_witness.as_ref().map(|w| witness_json(t, atoms, w)),
        },
        "violations": s.violations,
    })
}

fn daleth_json(d: &DalethStar, render_pair: impl Fn(usize, usize) -> Value) -> Value {
    let witnesses: BTreeMap<String, Value> = d
        .witnesses
        .iter()
        .map(|(v, w)| {
            let mut pair = render_pair(w.first, w.second);
            pair["lengths"] = set_json(w.lengths.values());
            (v.to_string(), pair)
        })
        .collect();
    json!({"values": set_json(&d.values), "status": "exact", "witnesses": witnesses})
}

fn vector_pair_json(t: &Target, atoms: &[Vec<u32>], i: usize, j: usize) -> Value {
    let uv: Vec<u32> = atoms[i].iter().zip(&atoms[j]).map(|(a, b)| a + b).collect();
    json!({
        "first": t.render_element(&atoms[i]),
        "second": t.render_element(&atoms[j]),
        "element": t.render_element(&uv),
    })
}

const OUT_OF_SCOPE: [&str; 2] = [
    "infinite class groups are not represented",
    "exactness of c(H) for groups with D(G) > D*(G) is not established",
];

fn invariants(args: &MonoidArgs, bound: Option<u32>, exact_daleth: bool) -> Result<Outcome> {
    let spec = args.spec()?;
    let (t, _) = load_target(&spec, true)?;
    let atoms = t.atoms();
    let (results, bound, failed) = match &t {
        Target::Labeled(f) => {
            let m = f.monoid();
            let table = f.table().class_table();
            let bound = bound.unwrap_or(2 * table.davenport() as u32);
            let r = invariant_report(m, bound, exact_daleth)?;
            let daleth = r.daleth_star.as_ref().map(|d| {
                daleth_json(d, |i, j| {
                    let (a, b) = (&table.atoms()[i], &table.atoms()[j]);
                    json!({
                        "first": render_class(a),
                        "second": render_class(b),
                        "element": render_class(&a.concat(b)),
                    })
                })
            });
            let mut out_of_scope = vec![OUT_OF_SCOPE[0]];
            if r.davenport > r.d_star {
                out_of_scope.push(OUT_OF_SCOPE[1]);
            }
            let failed = !r.violations.is_empty();
            (
                json!({
                    "davenport": r.davenport,
                    "d_star": r.d_star,
                    "daleth_star": daleth,
                    "scan": scan_json(&t, &atoms, &r.scan),
                    "catenary": r.catenary,
                    "beyond_scan": set_json(&r.beyond_scan),
                    "violations": r.violations,
                    "out_of_scope": out_of_scope,
                }),
                bound,
                failed,
            )
        }
        Target::Presented(p) => {
            let bound = bound.unwrap_or(8);
            let s = scan_source(p, bound, ScanConfig::default())?;
            let daleth = if exact_daleth {
                let d = daleth_from_pairs(&atoms, |y| p.fiber(y))?;
                Some(daleth_json(&d, |i, j| vector_pair_json(&t, &atoms, i, j)))
            } else {
                None
            };
            let mut violations = s.violations.clone();
            violations.extend(s.monoid_law_violations());
            let failed = !violations.is_empty();
            (
                json!({
                    "daleth_star": daleth,
                    "scan": scan_json(&t, &atoms, &s),
                    "catenary": lower_bound_catenary(&s),
                    "violations": violations,
                    "out_of_scope": [OUT_OF_SCOPE[0]],
                }),
                bound,
                failed,
            )
        }
        Target::Product(p) => {
            let bound = bound.unwrap_or(8);
            let (value, failed) = product_json(&t, p, &atoms, bound)?;
            (value, bound, failed)
        }
    };
    let parameters = json!({"bound": bound, "exact_daleth": exact_daleth});
    Ok(Outcome {
        report: report("invariants", Some(&spec), parameters, results)?,
        text: None,
        failed,
    })
}

fn lower_bound_catenary(s: &ScanReport) -> Value {
    json!({"value": s.ca_observed().last().copied().unwrap_or(0), "status": "lower-bound"})
}

fn product_json(t: &Target, p: &ProductMonoid, atoms: &[Vec<u32>], bound: u32) -> Result<(Value, bool)> {
    let r = product_invariants(p, bound)?;
    let components: Vec<Value> = r
        .component_scans
        .iter()
        .zip(&r.component_daleth)
        .map(|(s, d)| {
            json!({
                "daleth_star": set_json(d),
                "delta_observed": set_json(&s.delta_observed()),
                "ca_observed": set_json(&s.ca_observed()),
                "r_observed": set_json(&s.r_observed()),
            })
        })
        .collect();
    let mut violations = r.scan.violations.clone();
    violations.extend(r.scan.monoid_law_violations());
    violations.extend(r.union_violations.iter().cloned());
    let failed = !violations.is_empty();
    Ok((
        json!({
            "components": components,
            "daleth_star": daleth_json(&r.daleth, |i, j| vector_pair_json(t, atoms, i, j)),
            "scan": scan_json(t, atoms, &r.scan),
            "catenary": lower_bound_catenary(&r.scan),
            "union_violations": r.union_violations,
            "violations": violations,
            "out_of_scope": [OUT_OF_SCOPE[0]],
        }),
        failed,
    ))
}

fn parse_set(text: &str) -> Result<BTreeSet<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Spec(format!("bad set member {s:?}")))
        })
        .collect()
}

/// The spec of [`realize_catenary_set`]'s product.
pub fn realization_spec(set: &BTreeSet<u32>) -> MonoidSpec {
    let mut product = Vec::new();
    if set.contains(&2) {
        product.push(MonoidSpec::Block(BlockSpec {
            group: vec![2],
            primes: Some(vec![PrimeSpec { class: vec![1], count: 2 }]),
        }));
    }
    for &d in set.range(3..) {
        product.push(MonoidSpec::Block(BlockSpec {
            group: vec![d as u64],
            primes: Some(vec![
                PrimeSpec { class: vec![1], count: 1 },
                PrimeSpec { class: vec![d as i64 - 1], count: 1 },
            ]),
        }));
    }
    MonoidSpec::Product(ProductSpec { product })
}

fn realize(set_text: &str, bound: Option<u32>) -> Result<Outcome> {
    let set = parse_set(set_text)?;
    let product = realize_catenary_set(&set)?;
    let spec = realization_spec(&set);
    let Monoid::Product(from_spec) = spec.build()? else {
        unreachable!("product spec")
    };
    debug_assert_eq!(from_spec.components(), product.components());
    let bound = bound.unwrap_or(2 * set.last().copied().unwrap_or(0));
    let t = Target::new(Monoid::Product(from_spec), None)?;
    let atoms = t.atoms();
    let Target::Product(p) = &t else { unreachable!() };
    let (mut results, mut failed) = product_json(&t, p, &atoms, bound)?;
    let daleth: BTreeSet<u32> = serde_json::from_value(results["daleth_star"]["values"].clone())?;
    let ca: BTreeSet<u32> = serde_json::from_value(results["scan"]["ca_observed"].clone())?;
    let r: BTreeSet<u32> = serde_json::from_value(results["scan"]["r_observed"].clone())?;
    let expected_daleth: BTreeSet<u32> = set.iter().copied().filter(|&v| v != 2).collect();
    let checks = json!({
        "daleth_star_is_set_without_2": daleth == expected_daleth,
        "ca_is_set": ca == set,
        "r_is_set": r == set,
    });
    failed |= daleth != expected_daleth || ca != set || r != set;
    results["checks"] = checks;
    results["passed"] = json!(!failed);
    let parameters = json!({"set": set_json(&set), "bound": bound});
    Ok(Outcome {
        report: report("realize", Some(&spec), parameters, results)?,
        text: None,
        failed,
    })
}

fn witness(case: &str, m: Option<u32>, rank: Option<usize>) -> Result<Outcome> {
    let case: Case = case.parse()?;
    let w = prop34_witness(case, CaseParams { m, rank })?;
    let replay = w.replay()?;
    let monoid = &w.monoid;
    let spec = MonoidSpec::Block(BlockSpec {
        group: monoid.group().invariant_factors().to_vec(),
        primes: Some(
            monoid
                .classes()
                .iter()
                .zip(monoid.prime_counts())
                .map(|(g, &count)| PrimeSpec {
                    class: g.coords().iter().map(|&x| x as i64).collect(),
                    count,
                })
                .collect(),
        ),
    });
    let render_atoms = |z: &Vec<crate::blockmonoid::LabeledSequence>| -> Vec<String> {
        z.iter().map(|a| render_labeled(monoid, a.exponents())).collect()
    };
    let results = json!({
        "case": case,
        "element": render_labeled(monoid, w.element.exponents()),
        "factorizations": [render_atoms(&w.factorizations[0]), render_atoms(&w.factorizations[1])],
        "expected_catenary": w.expected_catenary,
        "expected_scan": w.expected_scan.as_ref().map(|(b, s)| json!({"bound": b, "set": set_json(s)})),
        "replay": replay,
    });
    Ok(Outcome {
        report: report("witness", Some(&spec), json!({"case": case, "m": m, "rank": rank}), results)?,
        text: None,
        failed: !replay.passed,
    })
}

fn verify_cmd(
    suite: &str,
    max_order: u64,
    groups: Option<&[String]>,
    bound: Option<u32>,
    seed: u64,
) -> Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let groups = groups
        .map(|gs| gs.iter().map(|g| parse_group_name(g)).collect::<Result<Vec<_>>>())
        .transpose()?;
    let opts = VerifyOptions {
        max_order,
        groups: groups.clone(),
        bound,
        seed,
    };
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, &opts))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let parameters = json!({
        "suite": suite,
        "max_order": max_order,
        "groups": groups.map(|gs| gs.iter().map(|g| g.invariant_factors().to_vec()).collect::<Vec<_>>()),
        "bound": bound,
        "seed": seed,
    });
    let results = json!({
        "passed": passed,
        "suites": reports,
        "out_of_scope": OUT_OF_SCOPE,
    });
    Ok(Outcome {
        report: report("verify", None, parameters, results)?,
        text: None,
        failed: !passed,
    })
}

fn cache_cmd(action: &CacheAction) -> Result<Outcome> {
    let cache = AtomCache::from_env();
    let dir = cache.dir().display().to_string();
    let (command, results) = match action {
        CacheAction::Ls => ("cache ls", json!({"dir": dir, "entries": cache.list()?})),
        CacheAction::Purge => ("cache purge", json!({"dir": dir, "removed": cache.purge()?})),
    };
    Ok(ok(report(command, None, json!({}), results)?))
}
