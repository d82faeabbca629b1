use std::process::{Command, Output};

use serde_json::Value;

const FIVE: &str = "n=10; a=1,2,3,6,7; b=4,5,7,8,10";
const CHAINED: &str = "n=8; a=1,2,4,6; b=3,5,7,8";

fn seqideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqideal"))
        .args(args)
        .env_remove("SEQIDEAL_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = seqideal(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn claim(doc: &Value, name: &str, source: &str) -> Value {
    doc["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name && c["source"] == source)
        .unwrap_or_else(|| panic!("no {name} [{source}] claim in {doc}"))["value"]
        .clone()
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn invariants_of_five_generator_pair() {
    let doc = json(&["invariants", FIVE]);
    assert_eq!(doc["command"], "invariants");
    assert_eq!(claim(&doc, "phi", "recursion"), 6);
    assert_eq!(claim(&doc, "depth_ideal", "recursion"), 7);
    assert_eq!(claim(&doc, "sdepth_ideal_lower", "closed-form"), 8);
    assert_eq!(claim(&doc, "dim_quotient", "recursion"), 8);
}

#[test]
fn oracles_agree_on_chained_pair() {
    let doc = json(&["hilbert", "--oracle", CHAINED]);
    assert_eq!(doc["agree"], true);
    assert_eq!(claim(&doc, "hilbert", "recursion"), claim(&doc, "hilbert", "oracle"));

    let doc = json(&["betti", "--oracle", CHAINED]);
    assert_eq!(doc["agree"], true);

    let doc = json(&["--witness", "sdepth", "--mode", "ideal", CHAINED]);
    assert_eq!(claim(&doc, "sdepth", "oracle"), 7);
    assert!(!doc["witness"]["intervals"].as_array().unwrap().is_empty());

    let doc = json(&["--witness", "primdec", "--oracle", CHAINED]);
    assert_eq!(doc["agree"], true);
    assert_eq!(doc["witness"]["minimal_primes"].as_array().unwrap().len(), 14);
}

#[test]
fn powers_report_every_source() {
    let doc = json(&["powers", "--t", "2", "--oracle", "n=6; a=1,4; b=2,5"]);
    assert_eq!(claim(&doc, "depth", "oracle"), 4);
    assert_eq!(claim(&doc, "depth", "closed-form"), 4);
}

#[test]
fn every_output_matches_schema() {
    let v = validator();
    let runs: [&[&str]; 8] = [
        &["invariants", FIVE],
        &["--witness", "invariants", CHAINED],
        &["hilbert", "--oracle", CHAINED],
        &["betti", "--oracle", "--ideal", CHAINED],
        &["--witness", "sdepth", CHAINED],
        &["--witness", "primdec", "--oracle", CHAINED],
        &["powers", "--t", "3", "--oracle", CHAINED],
        &["sweep", "--n-max", "4", "--s-max", "2"],
    ];
    for args in runs {
        let doc = json(args);
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let doc = json(&["verify-examples"]);
    assert!(v.is_valid(&doc));
}

#[test]
fn parse_errors_report_position_and_exit_one() {
    let out = seqideal(&["invariants", "n=10; a=1,2,3,6,7; b=4,5,7,8,x"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("at byte 29"), "{err}");
}

#[test]
fn invalid_pairs_and_usage_errors_exit_one() {
    assert_eq!(seqideal(&["invariants", "n=3; a=2,1; b=2,3"]).status.code(), Some(1));
    assert_eq!(seqideal(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(seqideal(&["powers", "--t", "0", CHAINED]).status.code(), Some(1));
    assert_eq!(seqideal(&["--help"]).status.code(), Some(0));
}

#[test]
fn guardrails_name_the_cap() {
    let out = seqideal(&["sweep", "--n-max", "13", "--modes", "phi-sdepth"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("12"), "{err}");
    assert_eq!(seqideal(&["sweep", "--modes", "bogus"]).status.code(), Some(1));
}

#[test]
fn verify_examples_passes() {
    let doc = json(&["verify-examples"]);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() > 150);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn sweep_is_clean_and_deterministic_across_threads() {
    let args = ["--json", "sweep", "--n-max", "5", "--s-max", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_seqideal")).args(args).env("SEQIDEAL_THREADS", "1").output().unwrap();
    let many = seqideal(&[&args[..], &["--parallelism", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let doc: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert!(doc["report"]["instances"].as_u64().unwrap() > 0);
    assert_eq!(doc["report"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn human_output_lists_sources() {
    let out = seqideal(&["invariants", FIVE]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[recursion]") && text.contains("[closed-form]"), "{text}");
}
