use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster-game"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), doc)
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() < tol
}

#[test]
fn play_defect_defect_is_mutual_cooperation() {
    let (code, doc) = run_json(&["play", "--a", "d", "--b", "d", "--no-timestamp"]);
    assert_eq!(code, 0);
    let r = &doc["result"];
    for path in ["circuit", "cluster"] {
        assert!(close(&r[path]["payoff_a"], 3.0, 1e-10), "{path}");
        assert!(close(&r[path]["payoff_b"], 3.0, 1e-10), "{path}");
    }
    assert_eq!(r["pathways_agree"], Value::Bool(true));
    assert_eq!(doc["seed"], 2007);
    assert_eq!(doc["schema"], 1);
    assert!(doc.get("timestamp_unix").is_none());
}

#[test]
fn play_cooperate_against_quarter_turn() {
    let (_, doc) = run_json(&["play", "--a", "c", "--b", "q:0.7854", "--no-timestamp"]);
    assert!(close(&doc["result"]["circuit"]["payoff_a"], 1.5, 1e-4));
    assert!(close(&doc["result"]["cluster"]["payoff_a"], 1.5, 1e-4));
}

#[test]
fn general_strategy_is_unreachable_on_the_cluster() {
    let (code, doc) = run_json(&["play", "--a", "g:1.0:0.3", "--b", "c"]);
    assert_eq!(code, 0);
    let status = doc["result"]["cluster"]["status"].as_str().unwrap();
    assert!(status.contains("unreachable"), "{status}");
    assert!(doc["result"]["circuit"]["payoff_a"].is_number());
    assert!(doc["timestamp_unix"].is_number());
}

#[test]
fn malformed_strategy_is_a_validation_error() {
    assert_eq!(run(&["play", "--a", "x", "--b", "c"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--grid", "1"]).status.code(), Some(2));
    assert_eq!(run(&["tomo", "--noise", "werner:1.5"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn sweep_corners_match_the_pure_profiles() {
    let (_, doc) = run_json(&["sweep", "--grid", "5", "--no-timestamp"]);
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    let at = |a: f64, b: f64| {
        rows.iter()
            .find(|r| close(&r["axis_a"], a, 1e-12) && close(&r["axis_b"], b, 1e-12))
            .unwrap()
    };
    // Corners and centre of the composite axes.
    assert!(close(&at(-1.0, -1.0)["payoff_a"], 3.0, 1e-10));
    assert!(close(&at(0.0, 0.0)["payoff_a"], 3.0, 1e-10));
    assert!(close(&at(1.0, 1.0)["payoff_a"], 1.0, 1e-10));
    assert!(close(&at(1.0, 0.0)["payoff_a"], 5.0, 1e-10));
    assert!(close(&at(1.0, 0.0)["payoff_b"], 0.0, 1e-10));
}

#[test]
fn sweep_csv_has_metadata_and_header() {
    let out = run(&["sweep", "--grid", "3", "--format", "csv", "--no-timestamp"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# schema=1"));
    assert_eq!(
        lines.next().unwrap(),
        "axis_a,axis_b,payoff_a,payoff_b,p00,p01,p10,p11"
    );
    assert_eq!(lines.count(), 9);
}

#[test]
fn verify_passes_and_detects_missing_corrections() {
    let (code, doc) = run_json(&["verify", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert!(doc["result"]["max_discrepancy"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["result"]["profiles"].as_array().unwrap().len(), 144);

    let (code, doc) = run_json(&["verify", "--grid", "c,d", "--no-corrections"]);
    assert_eq!(code, 3);
    let cd = doc["result"]["profiles"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["a"] == "c" && p["b"] == "d")
        .unwrap();
    assert!(cd["discrepancy"].as_f64().unwrap() > 0.5);
}

#[test]
fn tomo_werner_crosses_the_witness_bound() {
    let (code, doc) = run_json(&["tomo", "--noise", "werner:0.5947", "--n", "10000"]);
    assert_eq!(code, 0);
    let f = doc["result"]["F"].as_f64().unwrap();
    assert!((0.60..=0.64).contains(&f), "F = {f}");
    assert_eq!(doc["result"]["witness"], Value::Bool(true));
    assert!(doc["result"]["sigma_f"].as_f64().unwrap() > 0.0);

    let (_, doc) = run_json(&["tomo", "--noise", "werner:0.3", "--n", "10000", "--runs", "10"]);
    assert_eq!(doc["result"]["witness"], Value::Bool(false));
}

#[test]
fn tomo_noiseless_is_near_perfect() {
    let (_, doc) = run_json(&["tomo", "--n", "100000", "--runs", "10"]);
    assert!(doc["result"]["F"].as_f64().unwrap() > 0.99);
}

#[test]
fn tomo_counts_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let counts = dir.path().join("counts.json");
    let counts_arg = counts.to_str().unwrap();
    let (_, simulated) = run_json(&[
        "tomo", "--noise", "dephased:0.4", "--n", "2000", "--runs", "20", "--counts", counts_arg,
        "--no-timestamp",
    ]);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&counts).unwrap()).unwrap();
    assert_eq!(file["N"], 2000);
    assert_eq!(file["settings"].as_array().unwrap().len(), 81);

    let (_, reread) = run_json(&[
        "tomo", "--from-counts", counts_arg, "--runs", "20", "--no-timestamp",
    ]);
    assert_eq!(simulated["result"]["F"], reread["result"]["F"]);
    assert_eq!(simulated["result"]["sigma_f"], reread["result"]["sigma_f"]);
}

#[test]
fn analyze_reports_the_dilemma_and_its_resolution() {
    let (_, doc) = run_json(&["analyze", "--no-timestamp"]);
    let grids = doc["result"]["grids"].as_array().unwrap();
    let by_model = |m: &str| grids.iter().find(|g| g["model"] == m).unwrap();
    let dd = serde_json::json!(["d", "d"]);

    let classical = by_model("classical");
    assert_eq!(classical["nash"], serde_json::json!([["d", "d"]]));
    assert!(!classical["pareto"].as_array().unwrap().contains(&dd));
    assert_eq!(classical["verdict"], "dilemma present");

    for model in ["circuit", "cluster"] {
        let g = by_model(model);
        assert!(g["both"].as_array().unwrap().contains(&dd), "{model}");
        assert_eq!(g["verdict"], "dilemma resolved");
    }
}

#[test]
fn analyze_degenerate_table_makes_every_profile_optimal() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("flat.json");
    std::fs::write(&table, r#"{"cc": 2, "cd": 2, "dc": 2, "dd": 2}"#).unwrap();
    let (code, doc) = run_json(&[
        "analyze", "--grid", "c,d,q:1.0", "--table", table.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    for g in doc["result"]["grids"].as_array().unwrap() {
        let n = g["strategies"].as_array().unwrap().len();
        assert_eq!(g["nash"].as_array().unwrap().len(), n * n);
        assert_eq!(g["pareto"].as_array().unwrap().len(), n * n);
    }
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["play", "--a", "c", "--b", "c", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["command"], "play");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["sweep", "--grid", "5", "--no-timestamp"][..],
        &["tomo", "--noise", "werner:0.7", "--n", "800", "--runs", "15", "--seed", "9", "--no-timestamp"],
        &["analyze", "--format", "csv", "--no-timestamp"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
