//! Every document the binary emits must validate against the schema files
//! shipped under docs/schemas.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn check(schema_file: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schemas")
        .join(schema_file);
    let text = std::fs::read_to_string(&path).expect("schema file is shipped");
    let schema: Value = serde_json::from_str(&text).expect("schema file is JSON");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{schema_file} rejects {doc}: {errors:?}");
}

fn emitted(args: &[&str], expect_code: i32, schema_file: &str) -> Value {
    let out = gt(args);
    assert_eq!(out.status.code(), Some(expect_code), "exit code of gt {args:?}");
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    check(schema_file, &doc);
    doc
}

#[test]
fn bracket_documents_match_the_terms_schema() {
    let doc = emitted(
        &["bracket", "--g", "1", "--n", "0", r#"[{"coef":"3/2","word":"x1"}]"#, "y1"],
        0,
        "terms.schema.json",
    );
    assert!(!doc["terms"].as_array().unwrap().is_empty());
}

#[test]
fn cobracket_documents_match_the_biterms_schema() {
    let doc = emitted(
        &["cobracket", "--g", "1", "--n", "1", "--framing", r#"{"t":{}}"#, "x1 z1 X1 y1"],
        0,
        "biterms.schema.json",
    );
    assert!(doc["terms"].as_array().unwrap().len() > 4);
}

#[test]
fn rot_and_degrees_documents_match_their_schemas() {
    emitted(
        &["rot", "--g", "1", "--n", "1", "--framing", r#"{"t":{"z1":3}}"#, "--word", "x1 y1"],
        0,
        "rot.schema.json",
    );
    emitted(
        &["degrees", "--g", "2", "--n", "1", "--framing", r#"{"t":{"x2":-1}}"#],
        0,
        "degrees.schema.json",
    );
}

#[test]
fn classify_orbit_and_existence_documents_match_their_schemas() {
    let doc = emitted(
        &["classify", "--g", "1", "--n", "0", "--framing", r#"{"t":{}}"#],
        0,
        "classify.schema.json",
    );
    assert!(doc["arf"].is_number());
    let doc = emitted(
        &["orbit", "--g", "1", "--n", "1", r#"{"t":{"z1":1}}"#, r#"{"t":{"x1":2}}"#],
        0,
        "classify.schema.json",
    );
    assert!(doc["same_orbit"].is_boolean());
    emitted(
        &["exists-qaf", "--g", "1", "--n", "1", "--framing", r#"{"t":{"x1":3,"y1":1}}"#],
        0,
        "exists.schema.json",
    );
}

#[test]
fn push_and_cocycle_documents_match_their_schemas() {
    emitted(
        &["push", "--g", "1", "--n", "1", "--puncture", "1", "--word", "x1 y1"],
        0,
        "auto.schema.json",
    );
    emitted(
        &[
            "cocycle",
            "--g",
            "1",
            "--n",
            "0",
            "--framing",
            r#"{"t":{"y1":1}}"#,
            r#"{"images":{"x1":"x1","y1":"y1 x1"}}"#,
        ],
        0,
        "cocycle.schema.json",
    );
}

#[test]
fn series_documents_match_their_schema() {
    let doc = emitted(
        &["expand", "--g", "1", "--n", "0", "--trunc", "4", "--word", "x1 y1"],
        0,
        "series.schema.json",
    );
    assert_eq!(doc["components"]["0"][0]["mono"], Value::Array(vec![]));
    emitted(
        &["boundary-defect", "--g", "0", "--n", "2", "--trunc", "4"],
        0,
        "series.schema.json",
    );
}

#[test]
fn filtration_report_documents_match_their_schema() {
    emitted(
        &[
            "filtration-report",
            "--g",
            "1",
            "--n",
            "0",
            "--trunc",
            "4",
            "--framing",
            r#"{"t":{}}"#,
            "x1",
            "y1",
        ],
        0,
        "filtration-report.schema.json",
    );
}

#[test]
fn check_documents_match_their_schema() {
    emitted(&["check", "--suite", "whitney", "--seed", "3"], 0, "check.schema.json");
    emitted(&["check", "--suite", "existence", "--seed", "3"], 0, "check.schema.json");
}

#[test]
fn error_documents_match_their_schema() {
    emitted(
        &["rot", "--g", "1", "--n", "0", "--framing", "not json", "--word", "x1"],
        1,
        "error.schema.json",
    );
    emitted(
        &["degrees", "--g", "0", "--n", "0", "--framing", r#"{"t":{}}"#],
        2,
        "error.schema.json",
    );
    emitted(
        &["rot", "--g", "1", "--n", "0", "--framing", r#"{"t":{}}"#, "--word", "z1"],
        2,
        "error.schema.json",
    );
}

#[test]
fn documented_framing_inputs_match_the_framing_schema() {
    for text in [r#"{"t":{}}"#, r#"{"t":{"x1":1,"z1":-2}}"#, r#"{"v":1,"t":{"y2":4}}"#] {
        let doc: Value = serde_json::from_str(text).unwrap();
        check("framing.schema.json", &doc);
    }
}
