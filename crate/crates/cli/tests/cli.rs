use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn skein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(args)
        .env_remove("SKEIN_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";

fn write_corpus(dir: &Path) {
    let o = skein(&["corpus", "--out", dir.to_str().unwrap(), "--seed", "42", "--max-crossings", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn eval_hopf_and_unknot() {
    let o = skein(&["eval", "--format", "braid", "s1 s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-a^-1*z^-1 - a^-1*z + 1 + a*z^-1 + a*z");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unknot.pd");
    std::fs::write(&path, "O\n").unwrap();
    let o = skein(&["eval", "--in", path.to_str().unwrap(), "--ring", "series", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim().starts_with("1 + O(x^"), "{}", stdout(&o));
}

#[test]
fn eval_json_is_stable() {
    let a = skein(&["eval", TREFOIL, "--output", "json"]);
    let b = skein(&["eval", TREFOIL, "--output", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["ring"], "laurent");
    assert!(v["value"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = skein(&["eval", "X[1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse") && err.contains("column"), "{err}");
}

#[test]
fn budget_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(["eval", "--format", "braid", "s1 s2^-1 s1 s2^-1"])
        .env("SKEIN_NODE_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = skein(&["eval", "--format", "braid", "s1 s2^-1 s1 s2^-1", "--node-budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn series_labels_coefficients() {
    let o = skein(&["series", TREFOIL, "--n", "0", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "v_0^0 = 1");
    assert!(lines[4].starts_with("v_0^4 = "));

    let o = skein(&["series", "O O", "--n", "3", "--order", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("v_3^0 = 5"));

    let o = skein(&["series", "O", "--n", "2", "--order", "3", "--output", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let values: Vec<&str> = v["coefficients"].as_array().unwrap().iter().map(|c| c["text"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "0", "0", "0"]);
    assert_eq!(v["coefficients"][2]["label"], "v_2^2");
    assert_eq!(v["coefficients"][0]["value"], "1/1+0/1·i");
}

#[test]
fn bracket_of_hopf() {
    let o = skein(&["bracket", "--format", "braid", "s1 s1"]);
    assert_eq!(stdout(&o).trim(), "-A^-4 - A^4");
}

#[test]
fn corpus_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    write_corpus(a.path());
    write_corpus(b.path());
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() > 50);
    for name in names {
        let x = std::fs::read(a.path().join(&name)).unwrap();
        let y = std::fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
}

#[test]
fn verify_suites_report_json() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let corpus = dir.path().to_str().unwrap();
    for suite in ["oracle", "invariance", "cross-ring", "finite-type", "conventions"] {
        let o = skein(&["verify", "--suite", suite, "--corpus", corpus, "--order", "2", "--output", "json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["suite"], suite);
        assert_eq!(v["pass"], true);
        let case = &v["cases"][0];
        assert!(case["id"].is_string() && case["detail"].is_string());
        assert!(case["pass"].is_boolean() && case["ms"].is_u64());
    }
}

#[test]
fn prop42_conventions_fail() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let o = skein(&["verify", "--suite", "conventions", "--corpus", dir.path().to_str().unwrap(), "--normalization", "prop42"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("consistency identity"), "{}", stdout(&o));
}

#[test]
fn missing_corpus_is_reported() {
    let o = skein(&["verify", "--suite", "oracle", "--corpus", "/nonexistent/corpus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corpus"));
}
