//! The `wsa` binary: exit codes and report stability.

use std::path::PathBuf;
use std::process::Command;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn wsa(args: &[&str]) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_wsa")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), v)
}

fn p(name: &str) -> String {
    corpus(name).display().to_string()
}

#[test]
fn build_reports_dimensions() {
    let (code, r) = wsa(&["build", &p("disc_2_2")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dimension"], 112);
    assert_eq!(r["result"]["symmetric"], true);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let (_, r) = wsa(&["build", &p("D_b1_0")]);
    assert_eq!(r["result"]["dimension"], 36);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("wsa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(wsa(&["build", bad.to_str().unwrap()]).0, 2);
    let cap = dir.join("cap.json");
    std::fs::write(
        &cap,
        r#"{"field": "GF(2)", "family": {"tag": "disc_2_2", "params": {"b3": 1, "b4": 0}}, "options": {"degree_cap": 6}}"#,
    )
    .unwrap();
    assert_eq!(wsa(&["build", cap.to_str().unwrap()]).0, 3);
    assert_eq!(wsa(&["iso", &p("A_2_1_0"), &p("A_2_1_1")]).0, 1);
    assert_eq!(wsa(&["iso", &p("A_2_1_0"), &p("A_2_1_0")]).0, 0);
    assert_eq!(wsa(&["iso", &p("A_3_1_0"), &p("A_3_1_1"), "--budget", "1"]).0, 4);
    let (code, r) = wsa(&["iso", &p("Q2B3_4_1"), &p("Q2B3_4_0")]);
    assert_eq!(code, 0);
    assert!(r["result"]["verdict"]["witness"]["sigma"].is_array());
    assert_eq!(wsa(&["socle-equiv", &p("A_2_1_1"), &p("A_2_1_0")]).0, 0);
    assert_eq!(wsa(&["iso", &p("A_2_1_0"), &p("A_2_1_0_gf3")]).0, 2);
    assert_eq!(wsa(&["syzygy", &p("B_2_1_0"), "--module", "S1", "--steps", "4"]).0, 1);
    assert_eq!(wsa(&["frobnicate"]).0, 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wsa")).args(["iso", &p("A_3_1_0"), &p("A_3_1_1")]).env("WSA_BUDGET", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn syzygy_orbit_report() {
    let (code, r) = wsa(&["syzygy", &p("disc_2_2"), "--module", "S3", "--steps", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["period"], 4);
    let dims: Vec<u64> = r["result"]["orbit"].as_array().unwrap().iter().map(|s| s["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![35, 21, 35, 1, 35, 21, 35, 1]);
}

#[test]
fn reports_are_byte_identical() {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_wsa")).args(args).output().unwrap().stdout;
    for args in [vec!["build", &*p("Q2A_2_1")], vec!["iso", &*p("D_b1_0"), &*p("D_b1_1")], vec!["verify-paper", "--suite", "dims"]] {
        assert_eq!(run(&args), run(&args));
    }
}

#[test]
fn verify_paper_suites() {
    let (code, r) = wsa(&["verify-paper", "--suite", "periods"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["result"]["criteria"][0]["criterion"], 4);
}
