mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{suite_instance, E1};
use intflow_core::{parse_dimacs, write_dimacs};

fn intflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solves_e1_with_expected_flow() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.txt", E1);
    let o = intflow(&["solve", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("s 4\n"), "{text}");
    assert!(text.contains("f 1 2 2\nf 2 3 2\nf 1 3 0\n"));
}

#[test]
fn solution_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.txt", E1);
    let sol = write(dir.path(), "e1.sol", &stdout(&intflow(&["solve", inst.to_str().unwrap()])));
    let o = intflow(&["verify", inst.to_str().unwrap(), sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn tampered_solution_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.txt", E1);
    let sol = stdout(&intflow(&["solve", inst.to_str().unwrap()]));
    let bad = sol.replace("f 1 2 2\nf 2 3 2\nf 1 3 0", "f 1 2 1\nf 2 3 1\nf 1 3 1");
    let bad = bad.replace("s 4", "s 5");
    let path = write(dir.path(), "bad.sol", &bad);
    let o = intflow(&["verify", inst.to_str().unwrap(), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn infeasible_instance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "inf.txt", "p min 2 1\nn 1 3\nn 2 -3\na 1 2 0 2 1\n");
    let o = intflow(&["solve", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().next(), Some("s infeasible"));
    let o = intflow(&["oracle", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(intflow(&["solve", "/nonexistent/instance"]).status.code(), Some(1));
    assert_eq!(intflow(&["solve"]).status.code(), Some(1));
    assert_eq!(intflow(&["frobnicate"]).status.code(), Some(1));
    let lower = write(dir.path(), "low.txt", "p min 2 1\na 1 2 1 4 1\n");
    let o = intflow(&["solve", lower.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lower bound"));
}

#[test]
fn json_lines_records_parse() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.txt", E1);
    let o = intflow(&["solve", "--format", "json-lines", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records[0]["status"], "optimal");
    assert_eq!(records[0]["objective"], "4");
    let flows: Vec<&str> = records
        .iter()
        .filter(|r| r["type"] == "flow")
        .map(|r| r["flow"].as_str().unwrap())
        .collect();
    assert_eq!(flows, ["2", "2", "0"]);
}

#[test]
fn trace_ends_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "e1.txt", E1);
    let o = intflow(&["trace", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(records.len() > 2);
    let last = records.last().unwrap();
    assert_eq!(last["status"], "optimal");
    let iterations = last["iterations"].as_u64().unwrap();
    let per_iter = records.iter().filter(|r| r.get("iter").is_some()).count() as u64;
    assert_eq!(per_iter, iterations);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = ["gen", "--seed", "9", "--nodes", "6", "--arcs", "11"];
    let a = intflow(&args);
    let b = intflow(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let inst = parse_dimacs(&stdout(&a)).unwrap();
    assert_eq!((inst.node_count(), inst.arc_count()), (6, 11));
    let reprinted = write_dimacs(&inst, &[]);
    assert_eq!(parse_dimacs(&reprinted).unwrap(), inst);
}

#[test]
fn solver_and_oracle_agree_on_first_line() {
    let dir = tempfile::tempdir().unwrap();
    for seed in [1, 4, 8, 13] {
        let path = write(dir.path(), &format!("s{seed}.txt"), &write_dimacs(&suite_instance(seed), &[]));
        let p = path.to_str().unwrap();
        let ipm = stdout(&intflow(&["solve", "--seed", "3", p]));
        let oracle = stdout(&intflow(&["oracle", p]));
        assert_eq!(ipm.lines().next(), oracle.lines().next(), "seed {seed}");
    }
}
