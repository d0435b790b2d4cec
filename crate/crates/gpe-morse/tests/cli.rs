//! End-to-end CLI checks: exit codes, artifacts, manifests, determinism,
//! and configuration precedence.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gpe-morse"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .args(["--out", dir.to_str().unwrap()])
        .env_remove("GPE_MORSE_OUT")
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name))
        .unwrap_or_else(|e| panic!("missing artifact {name}: {e}"))
}

#[test]
fn ground_state_writes_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ground-state", "--k", "2", "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "ground_state.json")).unwrap();
    assert!((report["result"]["e_full"].as_f64().unwrap() + 1.7886).abs() < 1e-3);
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "ground_state_manifest.json")).unwrap();
    assert_eq!(manifest["command"], "ground_state");
    assert!(manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .any(|o| o == "ground_state.json"));
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn identical_flags_give_byte_identical_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["dynamics", "--k", "2", "--gamma", "0.5", "--p0", "0.2", "--t-max", "5"];
    assert_eq!(run_in(a.path(), &args).status.code(), Some(0));
    assert_eq!(run_in(b.path(), &args).status.code(), Some(0));
    assert_eq!(read(a.path(), "trajectory.csv"), read(b.path(), "trajectory.csv"));
    assert_eq!(
        read(a.path(), "dynamics_verdict.json"),
        read(b.path(), "dynamics_verdict.json")
    );

    let c = tempfile::tempdir().unwrap();
    let d = tempfile::tempdir().unwrap();
    let args = ["ground-state", "--k", "2", "--lambda", "1", "--table1"];
    assert_eq!(run_in(c.path(), &args).status.code(), Some(0));
    assert_eq!(run_in(d.path(), &args).status.code(), Some(0));
    assert_eq!(read(c.path(), "table1.csv"), read(d.path(), "table1.csv"));
}

#[test]
fn conflicting_flags_exit_with_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["ground-state", "--k", "2", "--lambda", "1", "--gamma", "0.5"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_required_flag_exits_with_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["dynamics", "--gamma", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn supercritical_coupling_exits_no_bound_state() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["ground-state", "--k", "2", "--lambda", "6"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn thresholdless_cell_exits_no_threshold_but_reports_it() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["threshold", "--k", "2", "--gamma", "1.2"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(read(dir.path(), "threshold.csv").contains("no-threshold"));
}

#[test]
fn zero_coupling_threshold_sits_between_the_regime_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["threshold", "--k", "2", "--gamma", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "threshold.csv");
    let row = csv.lines().nth(1).unwrap();
    let p_th: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((0.45..1.35).contains(&p_th), "p_th = {p_th}");
}

#[test]
fn critical_sweep_emits_csv_and_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["critical", "--sweep", "10,20,50,100"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = read(dir.path(), "critical_sweep.csv");
    assert!(csv.starts_with("K,lambda_c,gamma_c,lambda_c_asymptotic"));
    assert_eq!(csv.lines().count(), 5);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("fitted exponent"), "{stdout}");
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "critical_manifest.json")).unwrap();
    let slope = manifest["settings"]["fitted_exponent"].as_f64().unwrap();
    assert!((slope - 1.5).abs() < 0.05);
}

#[test]
fn oracle_ground_matches_the_exact_linear_energy() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["oracle", "ground", "--k", "2", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "ground.json")).unwrap();
    assert!((report["e0"].as_f64().unwrap() + 2.25).abs() < 1e-6);
}

#[test]
fn oracle_evolve_writes_moments_and_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["oracle", "evolve", "--k", "2", "--gamma", "0.5", "--p0", "0.2", "--t-max", "1"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(read(dir.path(), "moments.csv").starts_with("t,x0,v,delta,w,x_median"));
    assert!(read(dir.path(), "snapshot.csv").starts_with("x,re_psi,im_psi,density"));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("norm drift"), "{stdout}");
}

#[test]
fn env_var_selects_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["ground-state", "--k", "2", "--lambda", "1"])
        .env("GPE_MORSE_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("ground_state.json").exists());
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "t_max = 5\np0 = 0.2\n# comment\n").unwrap();

    // Config supplies t_max and p0.
    let out = run_in(
        dir.path(),
        &["dynamics", "--k", "2", "--gamma", "0.5", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "dynamics_manifest.json")).unwrap();
    assert_eq!(manifest["parameters"]["t_max"].as_f64(), Some(5.0));
    assert_eq!(manifest["parameters"]["p0"].as_f64(), Some(0.2));

    // An explicit flag wins over the config value.
    let out = run_in(
        dir.path(),
        &[
            "dynamics", "--k", "2", "--gamma", "0.5", "--t-max", "2",
            "--config", cfg.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "dynamics_manifest.json")).unwrap();
    assert_eq!(manifest["parameters"]["t_max"].as_f64(), Some(2.0));
}

#[test]
fn malformed_config_exits_with_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "this is not a key value line\n").unwrap();
    let out = run_in(
        dir.path(),
        &["dynamics", "--k", "2", "--gamma", "0.5", "--config", cfg.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_cleanly() {
    for flag in ["--help", "--version"] {
        let out = bin().arg(flag).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
}
