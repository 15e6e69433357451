use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use e1m1_cli::config::Scheme;
use e1m1_cli::{execute, parse_config, parse_table, sweep, CliError, Command, RunConfig, SweepAxis};
use proptest::prelude::*;

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scaled_text() -> String {
    fs::read_to_string(workspace().join("configs/scaled.toml")).unwrap()
}

fn scaled() -> RunConfig {
    parse_config(&scaled_text()).unwrap()
}

fn issues(text: &str) -> Vec<String> {
    match parse_config(text) {
        Err(CliError::Validation(list)) => list.iter().map(|i| i.to_string()).collect(),
        other => panic!("expected validation failure, got {other:?}"),
    }
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_e1m1"))
}

#[test]
fn preset_configs_parse() {
    assert!(parse_config("").is_ok());
    let text = fs::read_to_string(workspace().join("configs/table1.toml")).unwrap();
    let cfg = parse_config(&text).unwrap();
    assert_eq!(cfg.couplings.rabi_rad_s, 500.0);
    assert_eq!(cfg.beam.rayleigh_length_m, 5.0);
    assert!(cfg.atom.epsilon > 1e-11 && cfg.atom.epsilon < 1e-10);
}

#[test]
fn inconsistent_rayleigh_length_is_rejected() {
    // pi (1 mm)^2 / 698 nm = 4.5 m
    let list = issues("[beam]\nwaist_m = 1e-3\nwavelength_m = 698e-9\nrayleigh_length_m = 5.0\n");
    assert!(list.iter().any(|m| m.starts_with("beam.rayleigh_length_m")), "{list:?}");
    let z_r = std::f64::consts::PI * 1e-6 / 698e-9;
    assert!(parse_config(&format!("[beam]\nwaist_m = 1e-3\nwavelength_m = 698e-9\nrayleigh_length_m = {z_r}\n")).is_ok());
}

#[test]
fn negative_pulse_time_is_rejected() {
    let list = issues("[sequence]\npulse_time_s = -1e-3\n");
    assert!(list.iter().any(|m| m.starts_with("sequence.pulse_time_s")), "{list:?}");
}

#[test]
fn all_violations_are_reported() {
    let list = issues("[atom]\nmass_kg = -1.0\nepsilon = 0.5\ncolour = \"red\"\n[numerics]\ngrid_points = 1000\n[extra]\nx = 1\n");
    for path in ["atom.mass_kg", "atom.epsilon", "atom.colour", "numerics.grid_points", "extra"] {
        assert!(list.iter().any(|m| m.starts_with(path)), "{path} missing from {list:?}");
    }
}

#[test]
fn syntax_errors_carry_the_line() {
    let list = issues("[atom]\nmass_kg = 1.0\nepsilon = = 2\n");
    assert_eq!(list.len(), 1);
    assert!(list[0].contains("line 3"), "{}", list[0]);
}

#[test]
fn timing_errors_point_at_the_sequence() {
    let list = issues(&format!("{}\n", scaled_text().replace("t3_s = 3.0", "t3_s = 1.0")));
    assert!(list.iter().any(|m| m.starts_with("sequence")), "{list:?}");
}

#[test]
fn rabi_without_detuning_reaches_full_transfer() {
    let out = execute(Command::Rabi { gamma_rad_s: Some(0.0) }, &RunConfig::defaults()).unwrap();
    let t = &out.tables[0];
    let peak = (0..t.rows.len()).map(|r| t.value(r, "p_e").unwrap()).fold(0.0, f64::max);
    assert_eq!(peak, 1.0);
}

#[test]
fn double_differential_row_matches_the_redshift_term() {
    let out = execute(Command::Ifo { scheme: Some(Scheme::A), double_diff: true }, &scaled()).unwrap();
    let t = &out.tables[0];
    assert_eq!(t.rows.len(), 1);
    let expected = -1e-3 * 0.7 * 3.0 * 0.5 * 0.4;
    assert!((t.value(0, "first_order_rad").unwrap() - expected).abs() < 1e-15);
    // first-order agreement, up to a relative O(eps)
    assert!(t.value(0, "relative_deviation").unwrap().abs() < 2e-3);
}

#[test]
fn epsilon_sweep_reports_a_richardson_ratio_of_four() {
    let raw = parse_table(&scaled_text()).unwrap();
    let axes = [SweepAxis::parse("atom.epsilon=0.02,0.01").unwrap()];
    let r = sweep(&raw, Command::Ifo { scheme: None, double_diff: false }, &axes, 2).unwrap();
    assert!(r.worst.is_none());
    // sorted: 0.01 first, 0.02 second
    assert_eq!(r.table.value(0, "atom.epsilon"), Some(0.01));
    let ratio = r.table.value(1, "richardson_ratio").unwrap();
    assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
    assert_eq!(r.table.rows[0].last(), Some(&e1m1_cli::Cell::Empty));
}

#[test]
fn one_point_sweep_equals_a_single_run() {
    let cfg = scaled();
    let raw = parse_table(&scaled_text()).unwrap();
    let cmd = Command::Ifo { scheme: None, double_diff: true };
    let single = execute(cmd, &cfg).unwrap().summary;
    let r = sweep(&raw, cmd, &[SweepAxis::parse("atom.epsilon=1e-3").unwrap()], 1).unwrap();
    assert_eq!(r.table.rows.len(), 1);
    assert_eq!(&r.table.rows[0][1..1 + single.header.len()], single.rows[0].as_slice());
}

#[test]
fn rayleigh_sweep_leaves_the_double_differential_alone() {
    let raw = parse_table(&scaled_text()).unwrap();
    let axes = [SweepAxis::parse("beam.rayleigh_length_m=4,8,16").unwrap()];
    let r = sweep(&raw, Command::Ifo { scheme: None, double_diff: true }, &axes, 3).unwrap();
    let dd: Vec<f64> = (0..3).map(|i| r.table.value(i, "double_differential_rad").unwrap()).collect();
    for x in &dd {
        assert!((x - dd[0]).abs() < 1e-9 * dd[0].abs(), "{dd:?}");
    }
}

#[test]
fn sweep_output_does_not_depend_on_the_worker_count() {
    let raw = parse_table(&scaled_text()).unwrap();
    let axes = [SweepAxis::parse("atom.epsilon=3e-3,1e-3,2e-3").unwrap(), SweepAxis::parse("gravity.g_m_s2=0.7,0.35").unwrap()];
    let cmd = Command::Ifo { scheme: None, double_diff: false };
    let a = sweep(&raw, cmd, &axes, 1).unwrap().table.to_csv().unwrap();
    let b = sweep(&raw, cmd, &axes, 4).unwrap().table.to_csv().unwrap();
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 7);
}

#[test]
fn sweeps_are_limited_to_three_axes() {
    let raw = parse_table(&scaled_text()).unwrap();
    let axes: Vec<_> = ["atom.epsilon=1e-3", "gravity.g_m_s2=0.7", "sequence.tau_s=0.4", "beam.rayleigh_length_m=4"]
        .iter()
        .map(|a| SweepAxis::parse(a).unwrap())
        .collect();
    assert!(matches!(sweep(&raw, Command::Beam, &axes, 1), Err(CliError::Validation(_))));
}

#[test]
fn failing_points_go_to_a_manifest() {
    let raw = parse_table(&scaled_text()).unwrap();
    let axes = [SweepAxis::parse("atom.epsilon=1e-3,0.5").unwrap()];
    let r = sweep(&raw, Command::Ifo { scheme: None, double_diff: false }, &axes, 2).unwrap();
    assert_eq!(r.table.rows.len(), 1);
    assert_eq!(r.failures.rows.len(), 1);
    assert_eq!(r.worst.map(|e| e.exit_code()), Some(2));
}

#[test]
fn binary_writes_lf_csv_and_plot_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let config = workspace().join("configs/scaled.toml");
    let status = bin().arg("--config").arg(&config).arg("--out").arg(dir.path()).arg("--plot").args(["beam"]).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("beam.csv")).unwrap();
    assert!(csv.starts_with("z_m,z_over_z_r,"));
    assert!(!csv.contains('\r'));
    assert!(csv.lines().skip(1).all(|l| l.ends_with("true")));
    let script = fs::read_to_string(dir.path().join("beam.plot.py")).unwrap();
    assert!(script.contains("beam.csv"));
}

#[test]
fn binary_output_is_reproducible() {
    let config = workspace().join("configs/scaled.toml");
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let status = bin().arg("--config").arg(&config).arg("--out").arg(dir.path()).args(["ifo", "--scheme", "b"]).status().unwrap();
        assert!(status.success());
        fs::read(dir.path().join("ifo_b.csv")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[beam]\nwaist_m = -1\n").unwrap();
    let out = bin().arg("--config").arg(&bad).arg("--out").arg(dir.path()).arg("beam").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beam.waist_m"));

    // a coarse grid run that cannot meet an absurd tolerance
    let config = workspace().join("configs/scaled.toml");
    let out = bin()
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(dir.path())
        .args(["--set", "numerics.steps=20", "--set", "numerics.trace_samples=10", "--set", "numerics.tolerance=1e-14", "--set", "numerics.grid_points=256", "oracle"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn workers_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let config = workspace().join("configs/scaled.toml");
    let status = bin()
        .env("E1M1_WORKERS", "2")
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(dir.path())
        .args(["sweep", "--target", "ifo", "--double-diff", "--axis", "atom.epsilon=1e-3,5e-4"])
        .status()
        .unwrap();
    assert!(status.success());
    let csv = fs::read_to_string(dir.path().join("sweep_ifo.csv")).unwrap();
    assert!(csv.lines().next().unwrap().ends_with("richardson_ratio"));
    let bad = bin().env("E1M1_WORKERS", "zero").arg("presets").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn presets_are_listed() {
    let out = bin().arg("presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rayleigh_length = 5e0 m ; fountain-magnitude"));
}

proptest! {
    #[test]
    fn floats_round_trip_through_the_csv_format(x in proptest::num::f64::NORMAL) {
        let s = e1m1_cli::format_float(x);
        prop_assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn overrides_reach_the_config(eps in -0.09f64..0.09, g in 0.0f64..20.0) {
        let mut raw = parse_table("").unwrap();
        e1m1_cli::apply_override(&mut raw, &format!("atom.epsilon={eps:e}")).unwrap();
        e1m1_cli::apply_override(&mut raw, &format!("gravity.g_m_s2={g:e}")).unwrap();
        let cfg = RunConfig::from_table(&raw).unwrap();
        prop_assert_eq!(cfg.atom.epsilon, eps);
        prop_assert_eq!(cfg.gravity_m_s2, g);
    }
}
