use std::process::{Command, Output};

use cobord::{CobordismClass, Lazard, VarietyExpr};
use serde_json::Value;

fn cobord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(args)
        .env_remove("COBORD_TRUNC")
        .output()
        .expect("run cobord")
}

fn json(args: &[&str]) -> Value {
    let out = cobord(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn bound_examples() {
    let v = json(&["bound", r#"{"hyp":[3,4]}"#, "--p", "2", "--group", "1"]);
    assert_eq!(v["lower_bound"], 2);
    let v = json(&["bound", r#"{"proj":1}"#, "--p", "2", "--group", "1,1"]);
    assert_eq!(v["lower_bound"], "-inf");
    assert_eq!(v["in_ipr"], true);
}

#[test]
fn class_json_reparses_to_equal_class() {
    let expr = r#"{"prod":[{"proj":2},{"hyp":[3,2]}]}"#;
    let v = json(&["class", expr]);
    let class: CobordismClass = serde_json::from_value(v["class"].clone()).unwrap();
    let direct = Lazard::new(12)
        .evaluate(&expr.parse::<VarietyExpr>().unwrap())
        .unwrap();
    assert_eq!(class, direct);
}

#[test]
fn output_is_deterministic() {
    let args = ["class", r#"{"milnor":[2,3]}"#];
    assert_eq!(cobord(&args).stdout, cobord(&args).stdout);
}

#[test]
fn invalid_json_fails() {
    let out = cobord(&["class", "{not json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn truncation_violation_is_an_error() {
    let out = cobord(&["--trunc", "4", "class", r#"{"proj":5}"#]);
    assert!(!out.status.success());
}

#[test]
fn env_overrides_default_truncation() {
    let out = Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(["class", r#"{"proj":5}"#])
        .env("COBORD_TRUNC", "4")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(["class", r#"{"proj":5}"#])
        .env("COBORD_TRUNC", "6")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn verify_ideals_passes() {
    let out = cobord(&["verify", "ideals", "--p", "2", "--max-n", "3", "--format", "table"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ideals: OK"));
}

#[test]
fn fixedpoint_and_chern_bound() {
    let v = json(&["fixedpoint", r#"{"proj":2}"#, "--p", "2", "--group", "1"]);
    assert_eq!(v["forced_fixed_point"], true);
    let v = json(&["fixedpoint", r#"{"hyp":[2,0]}"#, "--p", "2", "--group", "1"]);
    assert_eq!(v["forced_fixed_point"], false);
    let v = json(&["chern-bound", r#"{"proj":2}"#, "--p", "3", "--group", "1", "--alpha", "2"]);
    assert_eq!(v["rows"][0]["bound"], 0);
}

#[test]
fn actions_list_witnesses() {
    let v = json(&["actions", "--p", "2", "--group", "1", "--kind", "milnor", "--max-dim", "3"]);
    let ws = v.as_array().unwrap();
    assert!(!ws.is_empty());
    assert!(ws.iter().all(|w| w["provenance"] == "prop-3.3.3"));
}
