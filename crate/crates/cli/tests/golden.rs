//! Golden-file tests pinning the JSON schema of every subcommand, plus the
//! documented exit codes.

use std::process::{Command, Output};

fn lenset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lenset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn assert_golden(name: &str, args: &[&str]) {
    let out = lenset(args);
    assert!(out.status.success(), "{name}: {:?}", out);
    let got: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let want: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("golden file"))
            .expect("golden JSON");
    assert_eq!(got, want, "{name} drifted from {path}");
}

#[test]
fn golden_info() {
    assert_golden("info", &["info", "--gens", "5,9,12", "--json"]);
}

#[test]
fn golden_info_degenerate() {
    assert_golden("info_degenerate", &["info", "--gens", "1", "--json"]);
}

#[test]
fn golden_apery() {
    assert_golden(
        "apery",
        &["apery", "--gens", "4,7", "--mod", "5", "--depth", "3", "--json"],
    );
}

#[test]
fn golden_lengths() {
    assert_golden("lengths", &["lengths", "--gens", "5,6,13,14", "--n", "26", "--json"]);
}

#[test]
fn golden_predict() {
    assert_golden("predict", &["predict", "--gens", "5,9,12", "--n", "100", "--json"]);
}

#[test]
fn golden_verify() {
    assert_golden(
        "verify",
        &["verify", "--gens", "5,6,13,14", "--from", "26", "--count", "1", "--json"],
    );
}

#[test]
fn golden_delta() {
    assert_golden("delta", &["delta", "--gens", "4,7", "--n", "117", "--json"]);
}

#[test]
fn golden_frontier() {
    assert_golden("frontier", &["frontier", "--gens", "5,9,12", "--json"]);
}

#[test]
fn golden_sample() {
    assert_golden(
        "sample",
        &[
            "sample", "--seed", "7", "--count", "4", "--max-embed", "4", "--max-gen", "40",
            "--json",
        ],
    );
}

#[test]
fn golden_shape() {
    assert_golden(
        "shape",
        &["shape", "--gens", "10,16,44,49,51", "--other", "10,16,38,44,49,51", "--json"],
    );
}

#[test]
fn golden_shape_functions() {
    assert_golden("shape_functions", &["shape", "--gens", "5,9,12", "--n", "1", "--json"]);
}

#[test]
fn golden_bound_report() {
    assert_golden(
        "bound_report",
        &[
            "bound-report", "--seed", "7", "--count", "3", "--max-embed", "3", "--max-gen",
            "30", "--json",
        ],
    );
}

#[test]
fn campaign_csv_is_deterministic_and_headed() {
    let args = [
        "campaign", "--seed", "7", "--count", "2", "--max-embed", "3", "--max-gen", "30",
    ];
    let a = lenset(&args);
    let b = lenset(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("generators;n;agreed;predicted;oracle;work\n"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: success, even with a disagreement below the bound
    let ok = lenset(&["verify", "--gens", "5,6,13,14", "--from", "26", "--count", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    // 1: domain error
    let domain = lenset(&["info", "--gens", "0,5"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(!domain.stderr.is_empty());
    // 1: domain error from an exhausted work budget
    let domain2 = lenset(&["lengths", "--gens", "5,9,12", "--n", "26", "--work-limit", "3"]);
    assert_eq!(domain2.status.code(), Some(1));
    // 2: usage error
    let usage = lenset(&["lengths", "--gens", "5,9,12"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage2 = lenset(&["lengths", "--gens", "5,9,12", "--n", "26", "--bogus"]);
    assert_eq!(usage2.status.code(), Some(2));
}

#[test]
fn human_apery_matches_figure_layout() {
    let out = lenset(&["apery", "--gens", "4,7", "--mod", "5", "--depth", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], vec!["0", "#", "#", "#", "4"]);
    assert_eq!(rows[4], vec!["20", "21", "22", "23", "24"]);
    assert_eq!(rows[6], vec!["Ap_1", "0", "11", "7", "8", "4"]);
    assert_eq!(rows[8], vec!["Ap_3", "20", "21", "22", "23", "19"]);
}
