//! End-to-end tests of the command-line interface: outputs, formats, and the
//! exit-code contract (0 success, 1 assertion violation, 2 usage/parse).

mod common;

use std::process::{Command, Output};

use serde_json::Value;

use common::defs_path;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_automata-groups"))
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary must run")
}

fn stdout_json(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout must be JSON")
}

fn defs(name: &str) -> String {
    defs_path(name).display().to_string()
}

#[test]
fn act_matches_the_recursion() {
    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "b", "00"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "10");

    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "a", "10"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "10");

    // identity fixes everything; empty word maps to empty output
    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "1", "0110"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0110");
    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "b", ""]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "");
}

#[test]
fn act_rejects_unknown_state_and_bad_word() {
    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "zz", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["act", "--file", &defs("basilica.txt"), "--state", "b", "02"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_reports_the_golden_tags() {
    let out = run(&["classify", "--file", &defs("basilica.txt"), "--nmax", "8"]);
    let doc = stdout_json(&out);
    let data = doc["data"].as_array().unwrap();
    assert_eq!(data.len(), 2);
    for entry in data {
        assert_eq!(entry["class"], "Bounded", "basilica states are bounded: {entry}");
        assert_eq!(entry["period"], 2);
        assert_eq!(entry["growth"].as_array().unwrap().len(), 9);
    }

    let out = run(&["classify", "--file", &defs("exponential.txt"), "--nmax", "6"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"][0]["class"], "Exponential");
    assert_eq!(doc["data"][0]["growth"][6], 64);
}

#[test]
fn classify_identity_only_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("identity.txt");
    std::fs::write(&path, "alphabet: 0 1\n").unwrap();
    let out = run(&["classify", "--file", path.to_str().unwrap(), "--state", "1"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"][0]["class"], "Finitary");
    assert_eq!(doc["data"][0]["depth"], 0);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "alphabet: 0 1\nstate a [1 1] perm 0 0\n").unwrap();
    let out = run(&["classify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn decompose_names_sections() {
    let out = run(&["decompose", "--file", &defs("basilica.txt"), "--state", "b"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"]["root_perm"], serde_json::json!(["1", "0"]));
    assert_eq!(doc["data"]["sections"][0]["section"], "a");
    assert_eq!(doc["data"]["sections"][1]["section"], "1");
}

#[test]
fn mother_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mother2.txt");
    let out = run(&["mother", "--d", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed = automata_groups::parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // 2 rooted + 2 directed generators for d = 2
    assert_eq!(parsed.names().filter(|n| n.starts_with('a')).count(), 2);
    assert_eq!(parsed.names().filter(|n| n.starts_with('b')).count(), 2);

    let out = run(&["mother", "--d", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed = automata_groups::parse_machine(&text).unwrap();
    assert_eq!(parsed.names().filter(|n| n.starts_with('a')).count(), 6);
    assert_eq!(parsed.names().filter(|n| n.starts_with('b')).count(), 72);

    let out = run(&["mother", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn embed_verifies_the_basilica_and_rejects_exponential_generators() {
    let out = run(&["embed", "--file", &defs("basilica.txt"), "--word-length", "3", "--depth", "2"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"]["verification"]["agreement_failures"], serde_json::json!([]));
    assert_eq!(doc["data"]["verification"]["injectivity_failures"], serde_json::json!([]));
    assert!(doc["data"]["plan"]["n_levels"].as_u64().unwrap() >= 1);

    let out = run(&["embed", "--file", &defs("exponential.txt")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("exponential"),
        "rejection must carry the classification tag"
    );

    // finitary-only input uses the degenerate branch
    let out = run(&["embed", "--file", &defs("rootswap.txt"), "--word-length", "3", "--depth", "2"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"]["verification"]["agreement_failures"], serde_json::json!([]));
}

#[test]
fn entropy_profile_emits_monotone_support() {
    let out = run(&["entropy-profile", "--d", "2", "--nmax", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut supports = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        supports.push(fields[2].parse::<usize>().unwrap());
    }
    assert_eq!(supports.len(), 8);
    for w in supports.windows(2) {
        assert!(w[0] <= w[1], "support column must be monotone: {supports:?}");
    }
}

#[test]
fn return_profile_usage_errors() {
    let out = run(&["return-profile", "--d", "2", "--samples", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // --epsilon requires --curves-out
    let out = run(&["return-profile", "--d", "2", "--samples", "10", "--seed", "1", "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn return_profile_with_bound_curves() {
    let dir = tempfile::tempdir().unwrap();
    let curves = dir.path().join("curves.csv");
    let out = run(&[
        "return-profile",
        "--d", "2",
        "--nmax", "3",
        "--samples", "1000",
        "--seed", "7",
        "--epsilon", "0.1",
        "--curves-out", curves.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(2).unwrap().starts_with("n,estimate,stderr,samples,seed"),
        "unexpected layout: {text}");
    let curve_text = std::fs::read_to_string(&curves).unwrap();
    assert!(curve_text.contains("n,rho_bound,iso_bound"));
    assert!(curve_text.contains("C = a = 1"));
}

#[test]
fn ball_profile_counts_the_basilica() {
    let out = run(&["ball-profile", "--file", &defs("basilica.txt"), "--nmax", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first_row = text.lines().nth(2).unwrap();
    assert!(first_row.starts_with("0,1,4,"), "r=0 ball is the identity: {first_row}");
}

#[test]
fn check_suites() {
    let out = run(&["check", "--suite", "appendix", "--trials", "100", "--seed", "7"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"]["violations"], serde_json::json!([]));

    let out = run(&["check", "--suite", "appendix", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(2), "stochastic suites require a seed");

    let out = run(&["check", "--suite", "convex", "--d", "2", "--nmax", "4"]);
    let doc = stdout_json(&out);
    for entry in doc["data"].as_array().unwrap() {
        assert_eq!(entry["exact_match"], true);
    }

    let out = run(&["check", "--suite", "first", "--d", "2", "--nmax", "6"]);
    let doc = stdout_json(&out);
    for entry in doc["data"].as_array().unwrap() {
        assert_eq!(entry["holds"], true);
    }

    let out = run(&["check", "--suite", "sandwich", "--d", "2", "--nmax", "10", "--epsilon", "0.1"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["data"]["asserted"], false);
    assert!(doc["data"]["rows"].as_array().unwrap().len() >= 4);
}

#[test]
fn headers_carry_version_and_config_hash() {
    let out = run(&["entropy-profile", "--d", "2", "--nmax", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("# automata-groups v0.1.0 cmd=entropy-profile config="));

    let out = run(&["check", "--suite", "convex", "--d", "2", "--nmax", "2"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["header"]["version"], "0.1.0");
    assert!(doc["header"]["config_hash"].as_str().unwrap().len() == 12);
}
