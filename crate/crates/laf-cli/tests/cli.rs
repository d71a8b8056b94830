//! End-to-end checks of the binary: exit codes, witness lines, JSON shape.

use std::path::PathBuf;
use std::process::{Command, Output};

const TOY: &str = "p cnf 4 3\n1 2 3 0\n2 3 4 0\n1 4 0\n";
const EX2: &str = "p cnf 6 4\n1 2 3 0\n2 4 5 0\n2 6 0\n3 4 6 0\n";
const UNSAT_PAIR: &str = "p cnf 1 2\n1 0\n-1 0\n";

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("laf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn laf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eos_on_toy_exits_20() {
    let f = write_tmp("toy.cnf", TOY);
    let out = laf(&["eos", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(20));
    assert!(stdout(&out).contains("s EOU"));
}

#[test]
fn eos_on_example2_exits_10_with_witness() {
    let f = write_tmp("ex2.cnf", EX2);
    let out = laf(&["eos", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.contains("s EOS"));
    assert!(text.contains("v 1 -2 -3 -4 5 6 0"));
}

#[test]
fn check_on_unsat_pair_exits_20() {
    let f = write_tmp("pair.cnf", UNSAT_PAIR);
    let out = laf(&["check", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(20));
    assert!(stdout(&out).contains("s UNSATISFIABLE"));
}

#[test]
fn check_on_forced_unit_exits_10_with_verified_witness() {
    let f = write_tmp("unit.cnf", "p cnf 1 1\n1 0\n");
    let out = laf(&["check", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.contains("s SATISFIABLE"));
    assert!(text.contains("v 1 0"));
}

#[test]
fn check_json_has_schema_and_answer() {
    let f = write_tmp("ex2c.cnf", EX2);
    let out = laf(&["check", f.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    // the gadget-reduced system is underdetermined here, so the sound
    // answer is Unk rather than SAT
    assert_eq!(v["answer"], "Unk");
    assert_eq!(out.status.code(), Some(0));
    assert!(v["reduction_stats"]["original_vars"].is_u64());
}

#[test]
fn eos_json_reports_stage_for_toy() {
    let f = write_tmp("toy2.cnf", TOY);
    let out = laf(&["eos", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(20));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["answer"], "EOU");
    assert!(v["certificate"]["stage"].is_string());
}

#[test]
fn reduce_emits_positive_dimacs_and_trace() {
    let input = write_tmp("mixed.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    let trace = std::env::temp_dir().join(format!("laf-trace-{}.json", std::process::id()));
    let out = laf(&[
        "reduce",
        input.to_str().unwrap(),
        "--emit-trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("p cnf") || text.contains("\np cnf"));
    assert!(!text.contains('-'), "reduced formula must be positive");
    let t: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["schema_version"], 1);
    assert_eq!(t["original_num_vars"], 3);
}

#[test]
fn oracle_counts_witnesses() {
    let f = write_tmp("ex2d.cnf", EX2);
    let out = laf(&["oracle", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.contains("c 1 witness(es)"));
    assert!(text.contains("v 1 -2 -3 -4 5 6 0"));

    let toy = write_tmp("toy3.cnf", TOY);
    let out = laf(&["oracle", toy.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(20));
    let out = laf(&["oracle", toy.to_str().unwrap(), "--sat", "--json"]);
    assert_eq!(out.status.code(), Some(10));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "sat");
    assert!(v["count"].as_u64().unwrap() > 0);
}

#[test]
fn bench_prints_csv_header() {
    let out = laf(&["bench", "--rows", "6:4:5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,m,trials,eos,eou,unk,timeouts,mean_ms,seed"));
    assert!(text.lines().nth(1).unwrap().starts_with("6,4,5,"));
}

#[test]
fn missing_file_exits_1() {
    let out = laf(&["check", "/nonexistent/path.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}
