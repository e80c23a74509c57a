//! End-to-end tests of the binary: exit codes, JSON shapes, witness file
//! round trips, and deterministic output bytes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sn-tiler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("sn-tiler-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn check_exit_codes() {
    // excluded is the definitive positive for criteria
    assert_eq!(exit_code(&run(&["check", "--n", "5", "--target", "tn"])), 0);
    // all criteria silent leaves the question open
    assert_eq!(
        exit_code(&run(&["check", "--n", "4", "--target", "tnstar"])),
        10
    );
    // malformed input
    assert_eq!(exit_code(&run(&["check", "--n", "2", "--target", "tn"])), 2);
}

#[test]
fn check_json_structure() {
    let output = run(&["check", "--n", "6", "--target", "tn", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["schema_version"], 1);
    assert_eq!(value["overall"], "excluded");
    let names: Vec<&str> = value["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "counting",
            "divisibility",
            "prime",
            "zero_eigenvalue",
            "hoffman"
        ]
    );
}

#[test]
fn search_verify_transitivity_pipeline() {
    let witness_path = temp_path("witness.txt");
    let output = run(&[
        "search",
        "--n",
        "3",
        "--target",
        "tnstar",
        "--deterministic",
        "--out",
        witness_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);

    let text = std::fs::read_to_string(&witness_path).unwrap();
    assert!(text.starts_with("3 TNSTAR\n"), "{text}");
    assert_eq!(text.lines().count(), 3);

    let verify = run(&["verify", "--witness", witness_path.to_str().unwrap()]);
    assert_eq!(exit_code(&verify), 0);
    assert!(stdout(&verify).contains("valid tiling"));

    let trans = run(&[
        "transitivity",
        "--witness",
        witness_path.to_str().unwrap(),
        "--lambda",
        "3",
    ]);
    assert_eq!(exit_code(&trans), 0);

    let trans = run(&[
        "transitivity",
        "--witness",
        witness_path.to_str().unwrap(),
        "--lambda",
        "2,1",
    ]);
    assert_eq!(exit_code(&trans), 10);

    std::fs::remove_file(&witness_path).ok();
}

#[test]
fn search_exit_codes() {
    assert_eq!(
        exit_code(&run(&["search", "--n", "4", "--target", "tnstar"])),
        10
    );
    // degree 9 exceeds even a raised bound of 8
    let over = Command::new(env!("CARGO_BIN_EXE_sn-tiler"))
        .args(["search", "--n", "9", "--target", "tnstar"])
        .env("SN_TILER_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(over.status.code(), Some(2));
}

#[test]
fn verify_rejects_bad_witness_files() {
    let path = temp_path("bad-witness.txt");
    std::fs::write(&path, "3 TNSTAR\n1 1 3\n").unwrap();
    let output = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
    std::fs::remove_file(&path).ok();

    let path = temp_path("rejected-witness.txt");
    std::fs::write(&path, "3 TNSTAR\n1 2 3\n2 3 1\n").unwrap();
    // well-formed file, but not a tiling
    let output = run(&["verify", "--witness", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 10);
    assert!(stdout(&output).contains("not a tiling"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn scan_json_is_deterministic_and_resolved() {
    let args = [
        "scan",
        "--from",
        "3",
        "--to",
        "6",
        "--target",
        "both",
        "--with-search",
        "--deterministic",
        "--json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0, "all rows resolve in 3..=6");
    assert_eq!(stdout(&first), stdout(&second));

    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let row6t = rows
        .iter()
        .find(|r| r["n"] == 6 && r["target"] == "tn")
        .unwrap();
    assert_eq!(row6t["criteria"]["zero_eigenvalue"], "excluded");
    let row3star = rows
        .iter()
        .find(|r| r["n"] == 3 && r["target"] == "tnstar")
        .unwrap();
    assert_eq!(row3star["overall"], "resolved_by_search");
    assert_eq!(row3star["search"]["outcome"], "found");
}

#[test]
fn scan_without_search_leaves_open_rows() {
    let output = run(&["scan", "--from", "4", "--to", "4", "--target", "tnstar"]);
    assert_eq!(exit_code(&output), 10);
    assert!(stdout(&output).contains("open"));
}

#[test]
fn spectrum_json_matches_interface() {
    let output = run(&["spectrum", "--n", "4", "--connection", "tn", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["n"], 4);
    assert_eq!(value["connection"], serde_json::json!(["id", "2,1,1"]));
    assert_eq!(value["rows"][0]["eigenvalue"], "7/1");
    assert_eq!(exit_code(&output), 0);
}

#[test]
fn hoffman_beta_override() {
    let output = run(&[
        "hoffman", "--n", "6", "--target", "tnstar", "--beta", "0,3,2", "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["ratio_bound"], "1/15");
    assert_eq!(exit_code(&output), 0);

    let bad = run(&["hoffman", "--n", "6", "--beta", "1,2"]);
    assert_eq!(exit_code(&bad), 2);
}

#[test]
fn partitions_listing() {
    let output = run(&["partitions", "--n", "6", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["count"], 11);
    assert_eq!(value["partitions"][0]["lambda"], "6");
    assert_eq!(value["partitions"][0]["content_sum"], 15);
}

#[test]
fn unknown_target_is_an_input_error() {
    assert_eq!(
        exit_code(&run(&["check", "--n", "5", "--target", "nope"])),
        2
    );
}
