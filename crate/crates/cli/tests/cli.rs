use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_cert(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Certificate bytes with the wall-clock field removed.
fn stable_bytes(path: &Path) -> String {
    let mut v = read_cert(path);
    v.as_object_mut().unwrap().remove("wall_time_ms");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn projective_line_square() {
    let o = qchar(&["ring", "mul", "--family", "qk_pn", "--n", "1", "--trunc", "2", "--lhs", "x", "--rhs", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*x - 1 + Q");
}

#[test]
fn certificate_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = qchar(&["qch", "verify", "--space", "pn", "--n", "2", "--trunc", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_cert(&path);
    assert_eq!(v["schema"], "qchar-cert/1");
    assert_eq!(v["command"], "qch verify");
    assert_eq!(v["truncation"], 3);
    assert_eq!(v["params"]["n"], 2);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(v["wall_time_ms"].is_u64());
    let raw = std::fs::read_to_string(&path).unwrap();
    assert!(raw.ends_with('\n'));
}

#[test]
fn certificates_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["ring", "table", "--family", "qh_fl", "--n", "3", "--trunc", "2"],
        &["jfun", "verify", "--n", "3", "--m", "3", "--max-deg", "2"],
        &["mirror", "verify", "--n", "3"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("{k}a.json"));
        let b = dir.path().join(format!("{k}b.json"));
        for p in [&a, &b] {
            let mut full = args.to_vec();
            full.extend(["--out", p.to_str().unwrap()]);
            assert_eq!(qchar(&full).status.code(), Some(0), "{args:?}");
        }
        assert_eq!(stable_bytes(&a), stable_bytes(&b), "{args:?}");
    }
}

#[test]
fn structure_table_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = qchar(&["ring", "table", "--family", "qk_pn", "--n", "1", "--trunc", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_cert(&path);
    let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
    assert_eq!(basis, ["1", "x"]);
    let xx = v["table"].as_array().unwrap().iter().find(|e| e["i"] == 1 && e["j"] == 1).unwrap();
    assert_eq!(xx["coords"]["x"], "2");
    assert_eq!(xx["coords"]["1"], "-1");
    assert_eq!(xx["coords"]["Q"], "1");
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["ring", "mul", "--family", "qk_pn", "--n", "1", "--lhs", "z", "--rhs", "x"],
        &["ring", "show", "--family", "bogus", "--n", "1"],
        &["ring", "mul", "--family", "qk_pn", "--n", "1", "--lhs", "x^-1", "--rhs", "x"],
        &["identity", "f2-reduction", "--n", "3", "--m", "4"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = qchar(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = qchar(&["ring", "mul", "--family", "qk_pn", "--n", "1", "--lhs", "z", "--rhs", "x"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("z"));
}

#[test]
fn todd_rejects_non_degree_two_argument() {
    let o = qchar(&["todd", "--family", "qh_pn", "--n", "2", "--series", "exp_neg", "--at", "h^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(qchar(&["--help"]).status.code(), Some(0));
}

#[test]
fn skipped_checks_do_not_fail() {
    let o = qchar(&["qch", "unique", "--space", "fl", "--n", "3", "--trunc", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP"));
}

#[test]
fn mirror_controls_reported() {
    let o = qchar(&["mirror", "verify", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS negative control"));
    assert!(!text.contains("FAIL"));
}
