//! CLI behaviors: the frozen CSV schema, emit/parse round trips, file I/O
//! and exit codes.

use std::process::Command;

use jlforge::cli::{rows_from_csv, CSV_HEADER};
use jlforge::transforms::{embed, EmbeddingSpec, TransformKind};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jlforge"))
}

#[test]
fn golden_tail_csv_is_stable() {
    let out = bin()
        .args([
            "tail", "--eps", "0.5", "--m", "16", "--k", "2", "--trials", "1000", "--seed", "7",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let golden = include_str!("golden/tail.csv");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden,
        "tail CSV deviates from the golden file"
    );
}

#[test]
fn csv_schema_and_roundtrip_through_binary() {
    let out = bin()
        .args([
            "sweep", "--eps", "0.5", "--m-grid", "16,32", "--trials", "2000", "--seed", "3",
            "--transform", "dense",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(CSV_HEADER));
    let rows = rows_from_csv(&text).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].m, 16);
    assert_eq!(rows[1].m, 32);
    for r in &rows {
        assert_eq!(r.transform, TransformKind::Dense);
        assert_eq!(r.p_hat, r.failures as f64 / r.trials as f64);
        assert!(r.ci_low <= r.p_hat && r.p_hat <= r.ci_high);
    }
    // Re-emitting parsed rows reproduces the bytes.
    assert_eq!(jlforge::cli::rows_to_csv(&rows), text);
}

#[test]
fn json_format_matches_csv_values() {
    let args = [
        "tail", "--eps", "0.5", "--m", "16", "--k", "2", "--trials", "3000", "--seed", "21",
    ];
    let csv_out = bin().args(args).output().unwrap();
    let json_out = bin().args(args).args(["--format", "json"]).output().unwrap();
    assert!(csv_out.status.success() && json_out.status.success());
    let rows = rows_from_csv(&String::from_utf8(csv_out.stdout).unwrap()).unwrap();
    let parsed: Vec<jlforge::SweepRow> =
        serde_json::from_slice(&json_out.stdout).expect("json output parses");
    assert_eq!(parsed, rows);
}

#[test]
fn gamma_command_reports_hand_value() {
    let out = bin().args(["gamma", "--m", "2", "--s", "2", "--k", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "m,s,k,count\n2,2,2,8\n");
}

#[test]
fn min_m_vacuous_delta_reports_one() {
    let out = bin()
        .args(["min-m", "--eps", "0.25", "--delta", "1", "--transform", "toeplitz"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let data = text.lines().nth(1).unwrap();
    assert!(data.ends_with(",1,true"), "unexpected min-m record: {data}");
}

#[test]
fn embed_command_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x.txt");
    let n = 24;
    let x: Vec<f64> = (0..n).map(|j| ((j as f64) * 0.31).sin()).collect();
    std::fs::write(
        &input,
        x.iter().map(|v| format!("{v:.17e}\n")).collect::<String>(),
    )
    .unwrap();
    let out_path = dir.path().join("y.txt");
    let status = bin()
        .args([
            "embed", "--n", "24", "--m", "6", "--transform", "toeplitz", "--seed", "99",
            "--input",
        ])
        .arg(&input)
        .arg("--output")
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(status.success());
    let emitted: Vec<f64> = std::fs::read_to_string(&out_path)
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    let spec = EmbeddingSpec::new(n, 6, TransformKind::Toeplitz, 99).unwrap();
    let expect = embed(&spec, &x).unwrap();
    assert_eq!(emitted, expect, "CLI embed output differs from the library");
}

#[test]
fn exit_codes_follow_error_kinds() {
    // Unknown flag: clap usage error, exit 2.
    let out = bin().args(["tail", "--nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Odd k: invalid argument, exit 2, machine-readable error object.
    let out = bin()
        .args(["tail", "--eps", "0.5", "--m", "16", "--k", "3", "--trials", "10", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr carries a JSON error object");
    assert_eq!(err["error"], "invalid-argument");
    // Enumeration out of budget: resource limit, exit 3.
    let out = bin()
        .args(["gamma", "--m", "50", "--s", "50", "--k", "8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "resource-limit");
}

#[test]
fn oracle_suite_passes_and_prints_per_check_lines() {
    let out = bin().args(["oracle-suite"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ok_lines = text.lines().filter(|l| l.starts_with("ok ")).count();
    assert!(ok_lines >= 15, "only {ok_lines} checks reported:\n{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn sign_seed_flag_accepted() {
    let out = bin()
        .args([
            "tail", "--eps", "0.5", "--m", "16", "--k", "2", "--trials", "5000", "--seed", "7",
            "--sign-seed", "123",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows = rows_from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].failures > 0);
}
