//! End-to-end checks of the command-line surface: exit codes, file
//! formats, and the shipped fixture models.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nearopt"))
}

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn solve_worked_model_succeeds() {
    let out = run(&["solve", "--model", &fixture_path("worked_two_var.json")]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Optimal sum = 1"), "stdout: {stdout}");
}

#[test]
fn infeasible_solve_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("infeasible.json");
    std::fs::write(
        &path,
        r#"{
            "kind": "raw-lp", "version": 1,
            "variables": [{"name": "x"}],
            "constraints": [{"terms": [{"var": "x", "coef": 1.0}], "sense": "<=", "rhs": -1.0}],
            "objectives": [{"label": "x", "terms": [{"var": "x", "coef": 1.0}]}]
        }"#,
    )
    .unwrap();
    let out = run(&["solve", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn truncated_model_exits_two_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{
            "kind": "raw-lp", "version": 1,
            "variables": [{"name": "x"}],
            "constraints": [{"terms": [{"var": "x", "coef": 1.0}], "sense": ">="}],
            "objectives": [{"label": "x", "terms": [{"var": "x", "coef": 1.0}]}]
        }"#,
    )
    .unwrap();
    let out = run(&["solve", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("rhs"), "stderr should name the missing field: {stderr}");
}

#[test]
fn unknown_selector_exits_two_and_lists_choices() {
    let out = run(&[
        "neccond",
        "--model",
        &fixture_path("toy_energy.json"),
        "--selector",
        "plutonium",
        "--eps",
        "C_tot=0.1,E_in=0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("endogenous"), "stderr: {stderr}");
}

#[test]
fn missing_model_flag_exits_two() {
    let out = run(&["solve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_energy_fixture_matches_the_bundled_model() {
    let loaded =
        nearopt::io::load_model(Path::new(&fixture_path("toy_energy.json"))).unwrap();
    assert_eq!(loaded.energy().unwrap().spec, nearopt::esom::fixture());
}

#[test]
fn pareto_emits_monotone_front_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "pareto",
        "--model",
        &fixture_path("toy_energy.json"),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("front.csv")).unwrap();
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for w in rows.windows(2) {
        assert!(w[1][1] >= w[0][1], "cost column must be non-decreasing");
        assert!(w[1][2] <= w[0][2], "energy column must be non-increasing");
    }
    // Anchor rows: deviations (0, x) on the first and (x, 0) on the last.
    assert_eq!(rows[0][3], 0.0);
    assert_eq!(rows[7][4], 0.0);

    let manifest = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(manifest["front_size"], 8);
    assert_eq!(manifest["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn neccond_single_on_worked_model() {
    let out = run(&[
        "neccond",
        "--model",
        &fixture_path("worked_two_var.json"),
        "--selector",
        "second",
        "--single",
        "--eps",
        "sum=0.1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0.9"), "stdout: {stdout}");
}

#[test]
fn neccond_multi_writes_witnessed_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "neccond",
        "--model",
        &fixture_path("toy_energy.json"),
        "--selector",
        "exogenous",
        "--eps",
        "C_tot=0.1,E_in=0.1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("necessary_condition.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["bound_kind"], "FrontUpperBound");
    assert_eq!(report["front_size"], 8);
    assert!(report["threshold"].as_f64().unwrap() > 0.0);
    assert_eq!(report["per_anchor"].as_array().unwrap().len(), 8);
    assert!(!report["witness"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_respects_jobs_env_fallback() {
    let out = bin()
        .args([
            "sweep",
            "--model",
            &fixture_path("toy_energy.json"),
            "--selector",
            "gas",
            "--grid",
            "0.01,0.02",
        ])
        .env("NEAROPT_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3, "header plus two rows: {stdout}");
}

#[test]
fn oracle_subcommand_passes_its_checks() {
    let out = run(&["oracle", "--cases", "40", "--step", "0.0005"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok   -")).count(), 6);
    assert!(!stdout.contains("FAIL"));
}
