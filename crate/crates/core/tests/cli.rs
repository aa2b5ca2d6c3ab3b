//! End-to-end tests of the `krull` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE_233: &str = r#"{"atoms":6,"relations":[[1,1,1,-4,0,0],[1,1,1,0,-1,-1]]}"#;

fn krull(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krull"))
        .args(args)
        .env("KRULL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.code() == Some(0) || out.status.code() == Some(1),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    assert_eq!(v["format"], 1);
    v
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn atom_counts_and_davenport() {
    let dir = tempfile::tempdir().unwrap();
    for (args, count, d) in [
        (vec!["--group", "3"], 4, 3),
        (vec!["--group", "2,2"], 5, 3),
        (vec!["--group", "5", "--subset", "1;4"], 3, 5),
    ] {
        let mut full = vec!["atoms"];
        full.extend(args);
        let v = json(&krull(dir.path(), &full));
        assert_eq!(v["results"]["count"], count);
        assert_eq!(v["results"]["davenport"], d);
    }
}

#[test]
fn analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&krull(dir.path(), &["analyze", "--group", "4", "--element", "1^4;3^4"]));
    assert_eq!(ints(&v["results"]["lengths"]), [2, 4]);
    assert_eq!(v["results"]["catenary"], 4);
    let v = json(&krull(dir.path(), &["analyze", "--group", "4", "--element", "1;2;2;3"]));
    assert_eq!(v["results"]["fiber_size"], 1);
    assert_eq!(v["results"]["catenary"], 0);
    let v = json(&krull(
        dir.path(),
        &["analyze", "--presented", EXAMPLE_233, "--element", "1,1,1,0,0,0"],
    ));
    assert_eq!(ints(&v["results"]["relation_distances"]), [3, 4]);
    assert_eq!(v["results"]["fiber_size"], 3);
    assert_eq!(v["results"]["elasticity"]["text"], "2");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| krull(dir.path(), args).status.code();
    assert_eq!(code(&["verify", "prop99"]), Some(2));
    assert_eq!(code(&["verify"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["analyze", "--group", "4", "--element", "1^3"]), Some(2));
    assert_eq!(code(&["atoms", "--monoid", r#"{"group":[4],"colour":2}"#]), Some(2));
    assert_eq!(code(&["atoms", "--group", "0"]), Some(2));
    let capped = r#"{"atoms":6,"relations":[[1,1,1,-4,0,0],[1,1,1,0,-1,-1]],"cap":2}"#;
    assert_eq!(
        code(&["analyze", "--presented", capped, "--element", "1,1,1,0,0,0"]),
        Some(3)
    );
    assert_eq!(code(&["realize", "--set", "2,3,5", "--bound", "4"]), Some(1));
    assert_eq!(code(&["realize", "--set", "2,3,5", "--bound", "10"]), Some(0));
    assert_eq!(code(&["verify", "example233"]), Some(0));
    assert_eq!(
        code(&["verify", "thm11", "--groups", "c4,c5,c8,c3x3", "--bound", "8"]),
        Some(0)
    );
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let atoms = |extra: &[&str]| {
        let mut args = vec!["atoms", "--group", "2,4"];
        args.extend(extra);
        json(&krull(dir.path(), &args))
    };
    let first = atoms(&[]);
    assert_eq!(first["results"]["cache"], "miss");
    let second = atoms(&[]);
    assert_eq!(second["results"]["cache"], "hit");
    assert_eq!(first["results"]["atoms"], second["results"]["atoms"]);
    let fresh = atoms(&["--no-cache"]);
    assert_eq!(fresh["results"]["atoms"], second["results"]["atoms"]);

    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut file: Value = serde_json::from_slice(&std::fs::read(&entry).unwrap()).unwrap();
    assert_eq!(file["format"], 1);
    file["atoms"].as_array_mut().unwrap().swap(0, 1);
    std::fs::write(&entry, serde_json::to_vec(&file).unwrap()).unwrap();
    let ls = json(&krull(dir.path(), &["cache", "ls"]));
    assert_eq!(ls["results"]["entries"][0]["valid"], false);
    let rebuilt = atoms(&[]);
    assert_eq!(rebuilt["results"]["cache"], "rebuilt");
    assert_eq!(rebuilt["results"]["atoms"], fresh["results"]["atoms"]);
    let ls = json(&krull(dir.path(), &["cache", "ls"]));
    assert_eq!(ls["results"]["entries"][0]["valid"], true);
    let purge = json(&krull(dir.path(), &["cache", "purge"]));
    assert_eq!(purge["results"]["removed"], 1);
    let ls = json(&krull(dir.path(), &["cache", "ls"]));
    assert!(ls["results"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic_and_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |threads: &str, out: &Path| {
        let o = krull(
            dir.path(),
            &[
                "invariants", "--group", "2,4", "--exact-daleth", "--threads", threads, "--report",
                out.to_str().unwrap(),
            ],
        );
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    };
    run("1", &a);
    run("4", &b);
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["spec"]["group"], serde_json::json!([2, 4]));
    assert_eq!(v["spec_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["results"]["catenary"]["status"], "exact-by-theorem");
}

/// Every witness in an `invariants` report reproduces its value through `analyze`.
#[test]
fn invariant_witnesses_replay() {
    let dir = tempfile::tempdir().unwrap();
    for spec_args in [
        vec!["--group", "2,4"],
        vec!["--presented", EXAMPLE_233],
        vec!["--monoid", r#"{"product":[{"group":[3]},{"group":[2],"primes":[{"class":[1],"count":2}]}]}"#],
    ] {
        let mut args = vec!["invariants", "--exact-daleth", "--bound", "8"];
        args.extend(&spec_args);
        let report = json(&krull(dir.path(), &args));
        let results = &report["results"];
        assert!(results["violations"].as_array().unwrap().is_empty());
        let analyze = |element: &str| {
            let mut a = vec!["analyze", "--element", element];
            a.extend(&spec_args);
            json(&krull(dir.path(), &a))["results"].clone()
        };
        let witnesses = &results["scan"]["witnesses"];
        for (value, w) in witnesses["catenary"].as_object().unwrap() {
            let r = analyze(w["element"].as_str().unwrap());
            assert_eq!(r["catenary"].to_string(), *value);
        }
        for (value, w) in witnesses["relation_distances"].as_object().unwrap() {
            let r = analyze(w["element"].as_str().unwrap());
            assert!(ints(&r["relation_distances"]).contains(&value.parse().unwrap()));
        }
        for (value, w) in witnesses["delta"].as_object().unwrap() {
            let r = analyze(w["element"].as_str().unwrap());
            assert!(ints(&r["delta"]).contains(&value.parse().unwrap()));
        }
        if let Some(w) = witnesses["elasticity"].as_object() {
            let r = analyze(w["element"].as_str().unwrap());
            assert_eq!(r["elasticity"], results["scan"]["max_elasticity"]);
        }
        for (value, w) in results["daleth_star"]["witnesses"].as_object().unwrap() {
            let r = analyze(w["element"].as_str().unwrap());
            let lengths = ints(&r["lengths"]);
            let min = lengths.iter().find(|&&l| l != 2).unwrap();
            assert_eq!(min.to_string(), *value);
        }
    }
}

#[test]
fn witness_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    for case in ["1.1", "1.2", "1.3", "2.1", "2.2", "2.3", "3", "4"] {
        let out = krull(dir.path(), &["witness", "--case", case]);
        assert_eq!(out.status.code(), Some(0), "case {case}");
        let v = json(&out);
        assert_eq!(v["results"]["replay"]["passed"], true);
        let spec = v["spec"].to_string();
        let element = v["results"]["element"].as_str().unwrap();
        let r = json(&krull(dir.path(), &["analyze", "--monoid", &spec, "--element", element]));
        assert_eq!(r["results"]["catenary"], v["results"]["replay"]["catenary"]);
    }
    assert_eq!(krull(dir.path(), &["witness", "--case", "5"]).status.code(), Some(2));
    let out = krull(dir.path(), &["atoms", "--group", "3", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("index\tlength\tatom\n"));
}

#[test]
fn group_info_and_realize_spec() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&krull(dir.path(), &["group-info", "--group", "2,3,4"]));
    assert_eq!(ints(&v["results"]["invariant_factors"]), [2, 12]);
    assert_eq!(v["results"]["d_star"], 13);
    assert_eq!(v["results"]["davenport"], 13);
    let v = json(&krull(dir.path(), &["realize", "--set", "2,3,5"]));
    assert_eq!(v["results"]["passed"], true);
    let spec = v["spec"].to_string();
    let inv = json(&krull(dir.path(), &["invariants", "--monoid", &spec, "--bound", "10"]));
    assert_eq!(ints(&inv["results"]["scan"]["r_observed"]), [2, 3, 5]);
    assert_eq!(inv["spec_hash"], v["spec_hash"]);
}
