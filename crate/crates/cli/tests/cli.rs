use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_liechains"));
    c.env_remove("LIECHAINS_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SL2: &str = r#"{
  "schema": "liealg/1", "field": "Q", "dim": 3, "basis": ["e", "h", "f"],
  "brackets": [
    {"i": 0, "j": 1, "terms": [[0, "-2"]]},
    {"i": 0, "j": 2, "terms": [[1, "1"]]},
    {"i": 1, "j": 2, "terms": [[2, "-2"]]}
  ],
  "subspaces": {"B": [["1", "0", "0"], ["0", "1", "0"]], "E": [["1", "0", "0"]]},
  "chains": {"borel": ["0", "B", "L"], "line": ["0", "E", "L"]}
}"#;

const HEISENBERG: &str = r#"{
  "schema": "liealg/1", "field": "Q", "dim": 3, "basis": ["x", "y", "z"],
  "brackets": [{"i": 0, "j": 1, "terms": [[2, "1"]]}],
  "subspaces": {"Z": [["0", "0", "1"]], "XZ": [["1", "0", "0"], ["0", "0", "1"]]},
  "chains": {"chief": ["0", "Z", "XZ", "L"]}
}"#;

fn machine_values(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "sl2.json", SL2);
    let o = run(&["validate", &good]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim 3"));
    let bad = write(dir.path(), "bad.json", &SL2.replace(r#""i": 0, "j": 1"#, r#""i": 1, "j": 1"#));
    let o = run(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn invariants_abelian_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = run(&["catalog", "emit", "abelian(3)", "--field", "GF(2)", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v = machine_values(&run(&["invariants", out.to_str().unwrap(), "--out", "machine"]));
    for k in ["ell", "minmax", "modl", "qil"] {
        assert_eq!(v[k]["value"], 3, "{k}");
    }
}

#[test]
fn invariants_l1_zero_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l1.json");
    run(&["catalog", "emit", "l1_gamma(0)", "--field", "GF(2)", "-o", out.to_str().unwrap()]);
    let v = machine_values(&run(&["invariants", out.to_str().unwrap(), "--out", "machine", "--method", "brute"]));
    assert_eq!(v["ell"]["value"], 1);
    assert_eq!(v["qil"]["value"], 3);
}

#[test]
fn invariants_sl2_structural_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sl2.json", SL2);
    let a = run(&["invariants", &f, "--method", "structural", "--out", "machine"]);
    let b = run(&["invariants", &f, "--method", "structural", "--out", "machine"]);
    assert_eq!(a.stdout, b.stdout);
    let v = machine_values(&a);
    assert_eq!(v["schema"], "report/1");
    assert_eq!(v["ell"]["value"], 1);
    assert_eq!(v["minmax"]["status"], "exact");
    assert_eq!(v["minmax"]["value"], 2);
    assert_eq!(v["modl"]["value"], 2);
    assert_eq!(v["qil"]["value"], 2);
}

#[test]
fn chain_checks() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.json", HEISENBERG);
    let o = run(&["chain-check", &h, "--chain", "chief", "--claim", "chief"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = write(dir.path(), "sl2.json", SL2);
    let o = run(&["chain-check", &s, "--chain", "borel", "--claim", "modular"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("split3_case"));
    let o = run(&["chain-check", &s, "--chain", "line", "--claim", "quasiideal"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails at step 1"));
    let o = run(&["chain-check", &s, "--chain", "nope", "--claim", "maximal"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown chain"));
}

#[test]
fn witt_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.json");
    run(&["catalog", "emit", "witt", "--field", "GF(5)", "-o", p.to_str().unwrap()]);
    let first = std::fs::read_to_string(&p).unwrap();
    let reparsed = liechains::io::AlgebraFile::parse(&first).unwrap();
    assert_eq!(reparsed.to_json_string(), first);
    assert!(run(&["validate", p.to_str().unwrap()]).status.success());
}

#[test]
fn lattice_dot_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    run(&["catalog", "emit", "sl2", "--field", "GF(3)", "-o", p.to_str().unwrap()]);
    let dot = dir.path().join("s.dot");
    let o = run(&["lattice", p.to_str().unwrap(), "--emit-dot", dot.to_str().unwrap(), "--flags", "ideal,modular,quasiideal"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("l 1"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let o = bin().args(["lattice", p.to_str().unwrap()]).env("LIECHAINS_BUDGET", "5").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exceeded"));
}

#[test]
fn verify_suite_exit_codes() {
    let o = run(&["verify", "--suite", "nonsplit-sum", "--suite", "semidirect-example", "--out", "machine"]);
    let v = machine_values(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["pass"], 3);
    let again = run(&["verify", "--suite", "nonsplit-sum", "--suite", "semidirect-example", "--out", "machine"]);
    assert_eq!(o.stdout, again.stdout);
    let o = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--list"]);
    assert!(stdout(&o).contains("coatom-identity"));
}
