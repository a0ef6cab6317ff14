use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coleman")).args(args).output().unwrap()
}

fn spec_file(dir: &TempDir, name: &str, v: Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_is_byte_identical_without_timing() {
    let dir = TempDir::new().unwrap();
    let s4 = spec_file(&dir, "s4.json", json!({"construct": "symmetric", "n": 4}));
    let args = ["verify", "T2.1", s4.to_str().unwrap(), "--no-timing"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report = stdout_json(&a);
    assert_eq!(report["timing_ms"], 0);
    for key in ["theorem", "group", "hypotheses", "conclusion", "status", "cap_notes"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn catalog_run_is_deterministic() {
    let args = ["catalog", "run", "--max-order", "24", "--no-timing"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_run_exits_2_on_contradiction() {
    // Hol(C8) is in range and contradicts the nilpotent-by-cyclic checker.
    let out = run(&["catalog", "run", "--max-order", "32", "--json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["contradictions"], 1);
    assert_eq!(v["failed_invariants"], 0);
}

#[test]
fn verify_exit_code_follows_status() {
    let dir = TempDir::new().unwrap();
    let hol8 = spec_file(&dir, "hol8.json", json!({"construct": "holomorph", "base": {"construct": "cyclic", "n": 8}}));
    let out = run(&["verify", "T3.7", hol8.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "contradiction");
    let out = run(&["verify", "C2.7", hol8.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn errors_are_json_on_stderr() {
    let dir = TempDir::new().unwrap();
    let s3 = spec_file(&dir, "s3.json", json!({"construct": "symmetric", "n": 3}));
    let cases: [(&[&str], &str); 4] = [
        (&["verify", "T9.9", s3.to_str().unwrap()], "UnknownTheoremId"),
        (&["aut", s3.to_str().unwrap(), "--p-central", "5"], "NotADivisor"),
        (&["group", "show", "/nonexistent/spec.json"], "Io"),
        (&["dade", "--invariants", "4", "--prime-bound", "10"], "PrimeSearchExhausted"),
    ];
    for (args, kind) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"], kind, "{args:?}");
        assert!(err["message"].is_string());
    }
    let bad = spec_file(&dir, "bad.json", json!({"construct": "perm", "degree": 3, "generators": [[0, 0, 1]]}));
    let err: Value = serde_json::from_slice(&run(&["group", "show", bad.to_str().unwrap()]).stderr).unwrap();
    assert_eq!(err["error"], "InvalidPermutation");
}

#[test]
fn cap_overrun_is_reported() {
    let dir = TempDir::new().unwrap();
    let s5 = spec_file(&dir, "s5.json", json!({"construct": "symmetric", "n": 5}));
    let out = Command::new(env!("CARGO_BIN_EXE_coleman"))
        .args(["aut", s5.to_str().unwrap()])
        .env("COLEMAN_MAX_ORDER", "60")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "OrderCapExceeded");
}

#[test]
fn aut_filters_and_group_show() {
    let dir = TempDir::new().unwrap();
    let s3 = spec_file(&dir, "s3.json", json!({"construct": "symmetric", "n": 3}));
    let s3 = s3.to_str().unwrap();
    assert_eq!(stdout_json(&run(&["aut", s3]))["count"], 6);
    assert_eq!(stdout_json(&run(&["aut", s3, "--coleman"]))["count"], 6);
    assert_eq!(stdout_json(&run(&["aut", s3, "--p-central", "3"]))["count"], 3);
    let show = stdout_json(&run(&["group", "show", s3]));
    assert_eq!(show["order"], 6);
    assert_eq!(show["class_count"], 3);
    assert_eq!(show["normal_subgroup_count"], 3);

    let a4 = spec_file(&dir, "a4.json", json!({"construct": "alternating", "n": 4}));
    let out = stdout_json(&run(&["outcol", a4.to_str().unwrap()]));
    assert_eq!(out["order"], 1);
}
