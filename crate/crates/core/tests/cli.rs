use std::process::{Command, Output};

use magic_spectra::cli::manifest_path;
use magic_spectra::magic_gen::{magic, MagicSquare};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_magic-spectra"));
    c.env_remove("MAGIC_SPECTRA_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn generate_plain_three() {
    let o = run(&["generate", "--n", "3", "--format", "plain"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8 1 6\n3 5 7\n4 9 2\n");
}

#[test]
fn generate_csv_four() {
    let o = run(&["generate", "--n", "4", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next(), Some("16,2,3,13"));
}

#[test]
fn generate_csv_round_trips() {
    for n in [3, 6, 8, 11, 14, 20] {
        let o = run(&["generate", "--n", &n.to_string(), "--format", "csv"]);
        let entries: Vec<i64> = stdout(&o)
            .lines()
            .flat_map(|l| l.split(',').map(|v| v.parse::<i64>().unwrap()).collect::<Vec<_>>())
            .collect();
        let parsed = MagicSquare::from_entries(n, entries).unwrap();
        assert_eq!(parsed, magic(n).unwrap());
    }
}

#[test]
fn order_two_is_a_usage_error() {
    let o = run(&["generate", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported order"));
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(run(&["generate"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--n", "5", "--mode", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["error-curve", "--from", "4", "--to", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--from", "9", "--to", "5"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn spectrum_markdown_table_five() {
    let o = run(&["spectrum", "--n", "5", "--mode", "both", "--format", "markdown"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "| mu | lambda | rel_err |");
    assert_eq!(lines[2], "| -21.27676547 | -21.266270208801 | 4.935168e-04 |");
    assert_eq!(lines[6], "| 65 | 65 | 0 |");
}

#[test]
fn spectrum_approx_four() {
    let o = run(&["spectrum", "--n", "4", "--mode", "approx", "--format", "csv"]);
    let vals: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    assert_eq!(vals, ["-8.944271909999", "0.000000000000", "8.944271909999", "34.000000000000"]);
}

#[test]
fn spectrum_numeric_three() {
    let o = run(&["spectrum", "--n", "3", "--mode", "numeric", "--format", "csv"]);
    assert_eq!(stdout(&o), "mu\n-4.89897949\n4.89897949\n15.00000000\n");
}

#[test]
fn verify_four_reports_rank() {
    let o = run(&["verify", "--from", "4", "--to", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("rank = 3"), "{text}");
    assert!(text.contains("±8.94427191"), "{text}");
}

#[test]
fn verify_six_reports_zero_count() {
    let o = run(&["verify", "--from", "6", "--to", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("zeros observed: 1 (expected 2k-1 = 1)"));
}

#[test]
fn verify_three_to_thirteen_passes() {
    let o = run(&["verify", "--from", "3", "--to", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let sections = |tag: &str| text.lines().filter(|l| l.starts_with("n = ") && l.contains(tag)).count();
    assert_eq!((sections("(odd)"), sections("(singly even)"), sections("(doubly even)")), (6, 2, 3));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_parity_filter_and_json() {
    let o = run(&["verify", "--from", "3", "--to", "12", "--parity", "doubly-even", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["pass"], true);
    let orders: std::collections::BTreeSet<u64> =
        v["data"]["checks"].as_array().unwrap().iter().map(|c| c["n"].as_u64().unwrap()).collect();
    assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![4, 8, 12]);
    assert_eq!(v["manifest"]["parameters"]["parity"], "doubly-even");
}

#[test]
fn every_command_supports_every_format() {
    let commands: [&[&str]; 4] = [
        &["generate", "--n", "5"],
        &["spectrum", "--n", "6"],
        &["verify", "--from", "5", "--to", "5"],
        &["error-curve", "--from", "3", "--to", "7"],
    ];
    for cmd in commands {
        for fmt in ["csv", "json", "markdown", "plain"] {
            let mut args = cmd.to_vec();
            args.extend(["--format", fmt]);
            let o = run(&args);
            assert!(o.status.success(), "{args:?}");
            assert!(!o.stdout.is_empty(), "{args:?}");
            if fmt == "json" {
                let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
                assert!(v.get("manifest").is_some() && v.get("data").is_some());
            }
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["spectrum", "--n", "9", "--format", "csv"][..],
        &["error-curve", "--from", "3", "--to", "21"][..],
        &["verify", "--from", "3", "--to", "8"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn error_curve_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = run(&["error-curve", "--from", "3", "--to", "13", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n,e_n,inv_n,is_prime,n_mod_6,below_bound,mod6_elevated,prime_near_eps")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[4][1], "5.782560e-10");
    for r in &rows {
        let e: f64 = r[1].parse().unwrap();
        let inv: f64 = r[2].parse().unwrap();
        assert!(e <= inv);
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(manifest_path(&out)).unwrap()).unwrap();
    assert_eq!(manifest["command"], "error-curve");
    assert_eq!(manifest["parameters"]["to"], "13");
    assert!(manifest["timestamp"].as_str().unwrap().ends_with('Z'));
    assert_eq!(manifest["tolerance_config"]["eig_tol"], 1e-12);
}

#[test]
fn unwritable_path_exits_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("curve.csv");
    let o = run(&["error-curve", "--from", "3", "--to", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn tolerance_env_override() {
    let bad = bin().env("MAGIC_SPECTRA_TOL", "loose").args(["spectrum", "--n", "3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    // no eigenpair can meet a residual threshold this far below machine precision
    let strict = bin()
        .env("MAGIC_SPECTRA_TOL", "1e-300")
        .args(["verify", "--from", "5", "--to", "5"])
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(3));
    let fine = bin().env("MAGIC_SPECTRA_TOL", "1e-10").args(["spectrum", "--n", "3"]).output().unwrap();
    assert!(fine.status.success());
}
