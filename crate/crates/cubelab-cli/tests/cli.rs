//! End-to-end tests of the `cubelab` binary.

use std::path::Path;
use std::process::{Command, Output};

fn cubelab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubelab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

const SUITE: &str = r#"{
    "name": "cli-suite",
    "functions": [
        {"source": "zoo", "spec": "majority:n=3"},
        {"source": "random_boolean", "n": 6, "seed": 7}
    ],
    "evaluators": [
        {"kind": "poincare"},
        {"kind": "kkl_boolean"},
        {"kind": "kkl_vector"},
        {"kind": "talagrand", "h": "one"}
    ],
    "format": "rows"
}"#;

#[test]
fn verify_runs_and_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("suite.json"), SUITE).unwrap();

    for out_name in ["a.csv", "b.csv"] {
        let out = cubelab(
            &["verify", "--suite", "suite.json", "--out", out_name],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);

    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("version,1\n"));
    // 2 functions x 4 evaluators + version + header
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("kkl_boolean"));
}

#[test]
fn verify_structured_output_and_format_flag() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("suite.json"), SUITE).unwrap();
    let out = cubelab(
        &[
            "verify",
            "--suite",
            "suite.json",
            "--format",
            "structured",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"version\": 1"));
    assert!(text.contains("\"name\": \"poincare\""));
}

#[test]
fn verify_reports_missing_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(&["verify", "--suite", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_loads_function_files_relative_to_suite() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("f.json"),
        r#"{"version": 1, "n": 1, "d": 1, "boolean": true, "values": [1, -1]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("suite.json"),
        r#"{
            "name": "file-suite",
            "functions": [{"source": "file", "path": "f.json"}],
            "evaluators": [{"kind": "kkl_boolean"}]
        }"#,
    )
    .unwrap();
    let out = cubelab(&["verify", "--suite", "suite.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fn=file:f.json"));
}

#[test]
fn scan_prints_summary_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(&["scan", "--n", "3", "--eval", "kkl-boolean"], dir.path());
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("min_slack"));
    assert!(stderr.contains("all_pass=true"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("kkl_boolean"));
}

#[test]
fn zoo_saves_a_loadable_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(
        &["zoo", "--spec", "tribes:w=2,s=2", "--save", "tribes.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("variance"));
    assert!(stdout.contains("monotone = true"));

    let (f, space) = cubelab::fileio::load_function(&dir.path().join("tribes.json")).unwrap();
    assert_eq!(f.n(), 4);
    assert!(f.is_boolean());
    assert!(space.is_some());
}

#[test]
fn sharpness_ratio_rows_are_informational() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(&["sharpness", "ratio", "--levels", "1,2"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("weighted_form_ratio"));
    assert!(stdout.contains(",false,")); // enforced = false
}

#[test]
fn sharpness_lemma_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(
        &[
            "sharpness", "lemma", "--g", "one", "--cases", "5", "--atoms", "6", "--seed", "3",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("lemma,upper").count(), 5);
    assert!(!stdout.contains(",false,true,")); // no failing enforced rows
}

#[test]
fn reconstruct_reports_small_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cubelab(
        &["reconstruct", "--spec", "majority:n=3", "--tol", "1e-8"],
        dir.path(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("max |reconstruction - (f - Ef)|"));
}
