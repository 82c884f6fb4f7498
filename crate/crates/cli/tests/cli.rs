use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn acmint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acmint"))
        .args(args)
        .env_remove("ACMINT_PRIME")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bound_reports_closed_forms() {
    let out = acmint(&["bound", "--t", "4", "--r", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["bound"], 11);
    assert_eq!(v["hVector"], serde_json::json!([1, 3, 3, 3, 1]));
    assert_eq!(v["expectedBetti"]["codim"], 3);

    let v = json(&acmint(&["bound", "--t", "2", "--r", "1", "--d", "5"]));
    assert_eq!(v["bound"], 250);
    let v = json(&acmint(&["bound", "--t", "4", "--r", "0"]));
    assert_eq!(v["bound"], 30);
    assert!(v["hVector"].is_null());
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--t", "5", "--r", "2", "--seed", "1"];
    let a = acmint(&args);
    let b = acmint(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["observedDegree"], 26);
    assert_eq!(v["pfaffianSpanEqual"], true);
    assert!(v.get("timings").is_none());

    let timed = json(&acmint(&["verify", "--t", "3", "--r", "1", "--timings"]));
    assert!(timed["timings"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn scenarios() {
    let v = json(&acmint(&["scenario", "--id", "ex-11"]));
    assert_eq!(v["count"], 11);
    assert_eq!(v["pass"], true);
    let a = acmint(&["scenario", "--id", "ex-2d3", "--d", "2"]);
    let b = acmint(&["scenario", "--id", "ex-2d3(2)"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["count"], 16);

    let out = acmint(&["scenario", "--id", "ex-mixed"]);
    let v = json(&out);
    assert!(v["caseA"].is_u64());
    assert_eq!(v["caseB"], 33);
    let expected_code = if v["pass"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected_code));

    let fresh = json(&acmint(&["scenario", "--id", "ex-26", "--fresh-seed"]));
    assert_eq!(fresh["count"], 26);
}

#[test]
fn construct_output_feeds_intersect_and_hilbert() {
    let dir = tempfile::tempdir().unwrap();
    let out = acmint(&["construct", "--t", "4", "--r", "2", "--seed", "7", "--out-dir", path(dir.path())]);
    assert!(out.status.success());
    let doc = dir.path().join("construct.json");
    std::fs::write(&doc, &out.stdout).unwrap();
    let again = acmint(&["construct", "--t", "4", "--r", "2", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);

    let v = json(&acmint(&["intersect", "--input", path(&doc)]));
    assert_eq!(v["length"], 11);
    let small = dir.path().join("small.json");
    let big = dir.path().join("big.json");
    let v = json(&acmint(&["intersect", "--a", path(&small), "--b", path(&big)]));
    assert_eq!(v["length"], 11);

    let v = json(&acmint(&["hilbert", "--input", path(&doc)]));
    assert_eq!(v["stabilizedValue"], 11);
    assert_eq!(v["hVector"], serde_json::json!([1, 3, 3, 3, 1]));
    let v = json(&acmint(&["hilbert", "--input", path(&dir.path().join("generators.json")), "--codim", "3"]));
    assert_eq!(v["degree"], 11);
    let v = json(&acmint(&["hilbert", "--input", path(&big), "--cutoff", "6"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 7);
    assert!(v["stabilizedValue"].is_null());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = acmint(&["construct", "--t", "3", "--r", "1", "--out-dir", path(dir.path())]);
    assert!(out.status.success());
    let small = dir.path().join("small.json");
    let same = acmint(&["intersect", "--a", path(&small), "--b", path(&small)]);
    assert_eq!(same.status.code(), Some(3));
    assert_eq!(json(&same)["stabilized"], false);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(acmint(&["hilbert", "--input", path(&bad)]).status.code(), Some(2));
    assert_eq!(acmint(&["verify", "--t", "3", "--r", "3"]).status.code(), Some(2));
    assert_eq!(acmint(&["scenario", "--id", "ex-99"]).status.code(), Some(2));
    assert_eq!(acmint(&["bound", "--t", "4", "--r", "2", "--prime", "9"]).status.code(), Some(0));
    assert_eq!(acmint(&["construct", "--t", "3", "--r", "1", "--prime", "9"]).status.code(), Some(2));
}

#[test]
fn prime_from_environment_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_acmint"));
        cmd.args(["construct", "--t", "2", "--r", "1"]).args(extra);
        match env {
            Some(p) => cmd.env("ACMINT_PRIME", p),
            None => cmd.env_remove("ACMINT_PRIME"),
        };
        json(&cmd.output().unwrap())["p"].as_u64().unwrap()
    };
    assert_eq!(run(None, &[]), 32003);
    assert_eq!(run(Some("101"), &[]), 101);
    assert_eq!(run(Some("101"), &["--prime", "103"]), 103);
}
