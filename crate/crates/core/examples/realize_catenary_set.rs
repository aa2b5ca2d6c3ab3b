//! A product of monoids whose set of catenary degrees is a prescribed set.
//!
//! Usage: `cargo run --release --example realize_catenary_set -- 2,3,5`

use std::collections::BTreeSet;

use krull::constructions::{product_invariants, realize_catenary_set};

fn main() -> krull::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "2,3,5".into());
    let set: BTreeSet<u32> = arg
        .split(',')
        .map(|s| s.trim().parse().expect("integer"))
        .collect();
    let product = realize_catenary_set(&set)?;
    let bound = 2 * set.last().copied().unwrap_or(2);
    let report = product_invariants(&product, bound)?;
    println!("{} components, per-component bound {bound}", product.components().len());
    for (i, scan) in report.component_scans.iter().enumerate() {
        println!("  component {i}: Ca = {:?}", scan.ca_observed());
    }
    println!("Ca  = {:?}", report.scan.ca_observed());
    println!("ℛ   = {:?}", report.scan.r_observed());
    println!("ℸ*  = {:?}", report.daleth.values);
    println!("union laws violated: {}", report.union_violations.len());
    Ok(())
}
