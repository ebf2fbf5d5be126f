use std::process::{Command, Output};

use serde_json::Value;

fn qbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbundle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = qbundle(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../../../schema/report.schema.json");
    let v: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_conforms(v: &Value) {
    let s = schema();
    if let Err(errs) = s.validate(v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

#[test]
fn run_all_is_deterministic_and_conforms() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = qbundle(&["run", "all", "--seed", "7", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_conforms(&v);
    assert_eq!(v["status"], "attention");
    assert!(!String::from_utf8(ta).unwrap().contains("timing_ms"));
}

#[test]
fn timing_is_opt_in() {
    let (code, v) = json_stdout(&["verify-normal-forms", "--entry", "3", "--timing"]);
    assert_eq!(code, 0);
    assert!(v["timing_ms"].is_u64());
    assert_conforms(&v);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["run", "section5", "--entry", "9"][..],
        &["run", "brauer", "--entry", "2"],
        &["run", "nope"],
        &["verify-section5", "--entry", "1"],
        &["verify-normal-forms", "--entry", "4", "--dim", "1"],
        &["verify-appendix", "--window", "3"],
        &["verify-appendix", "--gamma-exp", "-3"],
        &["brauer", "hilbert", "--a", "0", "--b", "1"],
        &["brauer", "hilbert", "--a", "x", "--b", "1"],
        &["brauer", "albert", "--p", "1", "--q", "1", "--r", "1", "--d", "8"],
    ] {
        let out = qbundle(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn appendix_statuses_follow_gamma_exponent() {
    let (code, v) = json_stdout(&["verify-appendix"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("attention")));
    let (code, v) = json_stdout(&["verify-appendix", "--gamma-exp", "-2"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, v) = json_stdout(&["verify-appendix", "--gamma-exp", "-1"]);
    assert_eq!((code, v["status"].as_str()), (1, Some("fail")));
    assert_conforms(&v);
}

#[test]
fn single_entries() {
    let (code, v) = json_stdout(&["run", "section5", "--entry", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_conforms(&v);
    let (code, v) = json_stdout(&["run", "normal-forms", "--entry", "7", "--dim", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["items"][0]["details"]["discriminant"], "t1*t2^2*t3^2");
}

#[test]
fn brauer_commands() {
    let (code, v) = json_stdout(&["brauer", "hilbert", "--a", "-1", "--b", "-1", "--place", "2"]);
    assert_eq!(code, 0);
    assert_conforms(&v);
    let text = v.to_string();
    assert!(text.contains("-1"), "{text}");
    let (code, v) = json_stdout(&["brauer", "albert", "--p", "3", "--q", "5", "--r", "7", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["items"][0]["details"]["similar"], true);
    let out = qbundle(&["brauer", "hilbert", "--a", "1/3", "--b", "-5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("[pass] brauer-hilbert"));
}
