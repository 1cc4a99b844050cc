use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SIX_CYCLE: &str = r#"{"name":"six-cycle","vertices":6,"edges":[
  {"kind":"signed","sign":1,"u":1,"v":2},{"kind":"signed","sign":-1,"u":2,"v":3},
  {"kind":"signed","sign":1,"u":3,"v":4},{"kind":"signed","sign":1,"u":4,"v":5},
  {"kind":"signed","sign":-1,"u":5,"v":6},{"kind":"signed","sign":1,"u":1,"v":6}]}"#;

const R1_NOT_NORMAL: &str = r#"{"vertices":4,"edges":[
  {"kind":"signed","sign":1,"u":1,"v":1},{"kind":"signed","sign":-1,"u":1,"v":2},
  {"kind":"signed","sign":1,"u":1,"v":3},{"kind":"directed","from":2,"to":3},
  {"kind":"signed","sign":-1,"u":2,"v":4},{"kind":"signed","sign":1,"u":3,"v":4},
  {"kind":"signed","sign":1,"u":4,"v":4}]}"#;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgering"))
        .args(args)
        .output()
        .unwrap()
}

fn run_on(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_six_cycle() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "six_cycle.json", SIX_CYCLE);
    let out = run_on(&["--format", "json", "analyze"], &p);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cone_dim"], 5);
    assert_eq!(v["bicomp"], 1);
    assert_eq!(v["cm"]["status"], "NORMAL_HENCE_CM");

    let text = run_on(&["analyze"], &p);
    assert_eq!(text.status.code(), Some(0));
    assert!(!text.stdout.is_empty());
}

#[test]
fn analyze_r1_but_not_normal() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "r1_not_normal.json", R1_NOT_NORMAL);
    let v = json(&run_on(&["--format", "json", "analyze"], &p));
    assert_eq!(v["r1"]["satisfied"], true);
    assert_eq!(v["normality"]["normal"], false);
    assert_eq!(v["cm"]["status"], "NOT_COHEN_MACAULAY");

    let n = json(&run_on(&["--format", "json", "normal"], &p));
    assert_eq!(n["cm"]["status"], "NOT_COHEN_MACAULAY");
    let r = json(&run_on(&["--format", "json", "r1"], &p));
    assert_eq!(
        r["facet_subgraphs"]["satisfied"],
        r["supporting_forms"]["satisfied"]
    );
    let f = json(&run_on(&["--format", "json", "facets"], &p));
    assert_eq!(
        f["facet_subgraphs"].as_array().unwrap().len(),
        f["polyhedral_facets"].as_array().unwrap().len()
    );
}

#[test]
fn edgeless_graph_has_dimension_zero() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "empty.json", r#"{"vertices":3,"edges":[]}"#);
    let out = run_on(&["--format", "json", "analyze"], &p);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cone_dim"], 0);
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let loop_doc = write(
        &dir,
        "loop.json",
        r#"{"vertices":2,"edges":[{"kind":"directed","from":1,"to":1}]}"#,
    );
    assert_eq!(run_on(&["analyze"], &loop_doc).status.code(), Some(2));
    let range = write(
        &dir,
        "range.json",
        r#"{"vertices":2,"edges":[{"kind":"signed","sign":1,"u":1,"v":3}]}"#,
    );
    assert_eq!(run_on(&["analyze"], &range).status.code(), Some(2));
    let garbage = write(&dir, "garbage.json", "not json");
    assert_eq!(run_on(&["analyze"], &garbage).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "/nonexistent/graph.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn bad_usage_exits_1() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["--format", "yaml", "analyze", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_on_examples() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("six_cycle.json", SIX_CYCLE),
        ("r1_not_normal.json", R1_NOT_NORMAL),
    ] {
        let p = write(&dir, name, body);
        let out = run_on(&["--format", "json", "verify"], &p);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(&out);
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["passed"] == true));
    }
}

#[test]
fn census_of_one_vertex() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("census.jsonl");
    let out = run(&[
        "census",
        "--max-n",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<Value> = body
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l["n"] == 1));
}

#[test]
fn census_beyond_exhaustive_range_needs_sampling() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("census.jsonl");
    let out = run(&[
        "census",
        "--max-n",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn census_injection_matches_analyze() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "r1_not_normal.json", R1_NOT_NORMAL);
    let out_path = dir.path().join("census.jsonl");
    let out = run(&[
        "census",
        "--max-n",
        "2",
        "--sample",
        "5",
        "--seed",
        "7",
        "--inject",
        p.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let body = fs::read_to_string(&out_path).unwrap();
    let records: Vec<Value> = body
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let injected: Vec<&Value> = records.iter().filter(|r| r["n"] == 4).collect();
    assert_eq!(injected.len(), 1);
    let a = json(&run_on(&["--format", "json", "analyze"], &p));
    assert_eq!(injected[0]["cm"], a["cm"]["status"]);
    assert_eq!(injected[0]["r1"], a["r1"]["satisfied"]);
    assert_eq!(injected[0]["normal"], a["normality"]["normal"]);
    assert_eq!(injected[0]["cone_dim"], a["cone_dim"]);
}
