use std::process::{Command, Output};

use serde_json::Value;

fn qtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtwist")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qtwist(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn e_count() {
    let v = json(&["e", "count", "--n", "2"]);
    assert_eq!(v["outputs"]["formula"], 25);
    assert_eq!(v["outputs"]["brute"], 25);
    assert_eq!(v["outputs"]["extremal"], "maximal");
}

#[test]
fn fiber_by_degrees() {
    let v = json(&["fiber", "--degA", "1", "--degB", "5"]);
    assert_eq!(v["outputs"]["type"], "II");
    assert_eq!(v["outputs"]["b2"], 10);
    assert_eq!(v["outputs"]["r"], 8);
}

#[test]
fn fiber_run_matches_table() {
    let v = json(&["fiber", "run", "--field", "2", "--A", "1,2,0,1", "--B", "0,1,0,0,0,0,0,3"]);
    assert_eq!(v["outputs"]["tate"], v["outputs"]["table"]);
    assert_eq!(v["checks"]["tate_matches_table"], true);
}

#[test]
fn examples_trace_rank() {
    let v = json(&["examples", "trace", "--m", "3"]);
    assert_eq!(v["outputs"]["rank"]["rank_arith"], 8);
    assert_eq!(v["outputs"]["rank"]["c_count"], 4609);
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
}

#[test]
fn examples_hermitian_and_quintic() {
    let v = json(&["examples", "hermitian", "--n", "1"]);
    assert_eq!(v["outputs"]["rank"]["rank_arith"], 4);
    assert_eq!(v["outputs"]["tower"]["A"], "0,1");
    let v = json(&["examples", "quintic"]);
    assert_eq!(v["outputs"]["expected_rank"], 8);
}

#[test]
fn twist_verify_and_build() {
    let v = json(&["twist", "verify", "--field", "4", "--A", "3,0,7", "--B", "1,1,0,0,9"]);
    assert_eq!(v["checks"]["isomorphism"], true);
    let v = json(&["twist", "build", "--field", "1", "--A", "0,1", "--B", "0"]);
    assert_eq!(v["outputs"]["curve"]["a4"], "1,1");
    assert_eq!(v["outputs"]["discriminant"], "1");
}

#[test]
fn field_commands() {
    let v = json(&["field", "solve-wp", "--field", "4", "--a", "6"]);
    assert_eq!(v["checks"]["root_satisfies_equation"], true);
    let v = json(&["field", "sqrt", "--field", "8", "--a", "0x53"]);
    assert_eq!(v["checks"]["square_matches"], true);
}

#[test]
fn verify_all_is_deterministic() {
    let a = qtwist(&["verify-all"]);
    let b = qtwist(&["verify-all", "--threads", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn grid_csv() {
    let out = qtwist(&["fiber", "grid", "--max", "3", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degA,degB,euler_n,type,components,b2,r,rank_formula,shioda_tate_ok");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1,1,1,I2*,"));
}

#[test]
fn exit_codes() {
    assert_eq!(qtwist(&["e", "count", "--n", "x"]).status.code(), Some(2));
    assert_eq!(qtwist(&["field", "info", "--field", "4:zz"]).status.code(), Some(2));
    assert_eq!(qtwist(&["e", "count", "--csv", "--n", "1"]).status.code(), Some(2));
    assert_eq!(qtwist(&["fiber", "--degA", "2", "--degB", "5"]).status.code(), Some(3));
    assert_eq!(qtwist(&["examples", "trace", "--m", "2"]).status.code(), Some(3));
    assert_eq!(qtwist(&["twist", "rank", "--field", "1", "--A", "0,1", "--ext", "3"]).status.code(), Some(3));
}
