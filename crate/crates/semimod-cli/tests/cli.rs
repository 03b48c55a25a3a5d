//! End-to-end tests of the command-line binary: exit codes, report
//! envelopes, `--out`, and byte determinism across runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/b31.json");
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semimod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn result_of(output: &Output) -> serde_json::Value {
    let doc: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("stdout is one JSON document");
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["tool"], "semimod");
    assert!(doc["version"].is_string());
    assert!(doc["budget"].is_object());
    doc["result"].clone()
}

#[test]
fn check_exact_reports_the_exact_sequence() {
    let out = run(&["check-exact", &fixture(), "--seq", "ses"]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert_eq!(result["exact"], true);
    assert_eq!(result["positions"].as_array().unwrap().len(), 3);
}

#[test]
fn splittings_finds_left_only() {
    let out = run(&["splittings", &fixture(), "--seq", "ses"]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert_eq!(result["left"], serde_json::json!([0, 1, 1]));
    assert_eq!(result["right"], serde_json::Value::Null);
    assert_eq!(result["short_exact"]["holds"], true);
}

#[test]
fn projective_verdict_false_still_exits_zero() {
    let out = run(&[
        "projective",
        &fixture(),
        "--P",
        "Z2",
        "--M",
        "B31",
        "--flavor",
        "k",
    ]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert_eq!(result["verdict"], false);
    assert!(result["failure"]["NoLift"].is_object());
}

#[test]
fn laws_pass_and_are_deterministic_bytes() {
    let args = [
        "laws",
        "--suite",
        "pushout-refines-cpushout",
        "--samples",
        "15",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let result = result_of(&a);
    assert_eq!(result["pass"], true);
    assert_eq!(result["seed"], 11);
}

#[test]
fn corpus_passes_and_is_deterministic_bytes() {
    let a = run(&["corpus"]);
    let b = run(&["corpus"]);
    assert!(a.status.success(), "corpus drifted: {:?}", a);
    assert_eq!(a.stdout, b.stdout);
    let result = result_of(&a);
    assert_eq!(result["matches_golden"], true);
    assert_eq!(result["report"]["pass"], true);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["laws", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_model_exits_two_with_located_errors() {
    let dir = std::env::temp_dir().join("semimod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"format":1,"semimodules":{"M":{"scalars":"naturals","size":2,"add":[0,1,1,9]}}}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["valid"], false);
    let errors = doc["result"]["errors"].as_array().unwrap();
    assert!(errors[0]["pointer"].as_str().unwrap().contains("/semimodules/M"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("semimod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "hom",
        &fixture(),
        "--dom",
        "Z2",
        "--cod",
        "B31",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["count"], 1);
}

#[test]
fn quotient_by_subset_matches_the_worked_example() {
    let out = run(&["quotient", &fixture(), "--module", "B31", "--subset", "0,2"]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert_eq!(result["projection"], serde_json::json!([0, 1, 0]));
    assert_eq!(result["kernel"], serde_json::json!([0, 2]));
    assert_eq!(result["module"]["size"], 2);
}

#[test]
fn pushout_of_collapse_against_projection() {
    // Both legs leave B31: the collapse onto {0,2} and the projection onto
    // Z2. Gluing their images collapses everything to a point.
    let out = run(&["pushout", &fixture(), "--f", "split", "--g", "pi"]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert_eq!(result["apex"]["size"], 1);
    let c = run(&["c-pushout", &fixture(), "--f", "split", "--g", "pi"]);
    assert!(c.status.success());
    // Mismatched spans are usage errors.
    let bad = run(&["pushout", &fixture(), "--f", "iota", "--g", "split"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bundled_fixtures_reserialize_byte_identically() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    for rel in ["fixtures/b31.json", "fixtures/golden/corpus.json"] {
        let text = std::fs::read_to_string(root.join(rel)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text, "{rel}");
    }
}

#[test]
fn builtin_names_resolve_in_commands() {
    let out = run(&["hom", &fixture(), "--dom", "C(2,1)", "--cod", "C(1,1)"]);
    assert!(out.status.success());
    let result = result_of(&out);
    assert!(result["count"].as_u64().unwrap() >= 1);
}
