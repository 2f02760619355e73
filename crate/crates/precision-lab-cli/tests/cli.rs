//! End-to-end tests of the command-line interface: flags, CSV schemas,
//! exit codes, config-file handling, and output determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_precision-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Parses CSV text into (header, rows), ignoring `#` comment lines.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let (header, raw) = parse_csv_raw(text);
    let rows = raw
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|f| f.parse::<f64>().expect("numeric field"))
                .collect()
        })
        .collect();
    (header, rows)
}

/// Like `parse_csv` but keeps the fields as strings (the table command's
/// first column is a precision label).
fn parse_csv_raw(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines
        .next()
        .expect("header present")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn rotate_native_288_reproduces_tiny_positive_drift() {
    let out = run(&[
        "rotate",
        "--theta-deg",
        "5",
        "--steps",
        "288",
        "--digits",
        "native",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout_str(&out));
    assert_eq!(
        header,
        vec![
            "k",
            "x",
            "y",
            "norm",
            "norm_drift",
            "phase_deg",
            "phase_error_deg"
        ]
    );
    assert_eq!(rows.len(), 289); // k = 0..=288
    let last = rows.last().unwrap();
    assert_eq!(last[0], 288.0);
    let drift = last[4];
    assert!(drift > 0.0 && drift < 2e-14, "drift {drift}");
}

#[test]
fn rotate_exact_subgroup_at_seven_digits() {
    let out = run(&[
        "rotate",
        "--theta-deg",
        "90",
        "--steps",
        "4",
        "--digits",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout_str(&out));
    let last = rows.last().unwrap();
    assert_eq!(&last[1..3], &[1.0, 0.0]);
    assert_eq!(last[4], 0.0);
}

#[test]
fn rotate_square_mode_emits_det_drift_and_diverges() {
    let out = run(&[
        "rotate",
        "--mode",
        "square",
        "--theta-deg",
        "5",
        "--steps",
        "40",
        "--digits",
        "7",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "cascade at 7 digits must diverge"
    );
    let text = stdout_str(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header.last().unwrap(), "det_drift");
    assert!(text.lines().any(|l| l.starts_with("# diverged=true")));
    // growth from 1: late |drift| exceeds early |drift|
    let drift_at = |k: f64| {
        rows.iter()
            .find(|r| r[0] == k)
            .map(|r| r[4].abs())
            .expect("row present")
    };
    let last_finite = rows
        .iter()
        .rev()
        .find(|r| r[4].is_finite())
        .expect("finite rows exist");
    assert!(last_finite[4].abs() > drift_at(10.0));
}

#[test]
fn rotate_csv_fields_roundtrip_bit_exactly() {
    let out = run(&["rotate", "--steps", "50", "--digits", "9"]);
    let text = stdout_str(&out);
    for line in text.lines().skip(1).filter(|l| !l.starts_with('#')) {
        for field in line.split(',') {
            let v: f64 = field.parse().expect("parses");
            let mut expect = format!("{v}");
            let a = v.abs();
            if v != 0.0 && !(1e-4..1e16).contains(&a) {
                expect = format!("{v:e}");
            }
            assert_eq!(field, expect, "field {field} is shortest round-trip");
        }
    }
}

#[test]
fn rotate_writes_file_and_gnuplot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let gp = dir.path().join("traj.gp");
    let out = run(&[
        "rotate",
        "--steps",
        "10",
        "--out",
        csv.to_str().unwrap(),
        "--gnuplot-script",
        gp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("k,x,y,"));
    let script = std::fs::read_to_string(&gp).unwrap();
    assert!(script.contains("plot") && script.contains("traj.csv"));
}

#[test]
fn gnuplot_script_requires_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let gp = dir.path().join("x.gp");
    let out = run(&[
        "rotate",
        "--steps",
        "5",
        "--gnuplot-script",
        gp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "rotate",
        "--steps",
        "100",
        "--digits",
        "11",
        "--record-every",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_flag_exits_64_with_usage() {
    let out = run(&["rotate", "--thetadeg", "5"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(
        err.to_lowercase().contains("usage") || err.contains("--help"),
        "{err}"
    );

    let out = run(&["rotate", "--digits", "eighteen"]);
    assert_eq!(out.status.code(), Some(64));

    let out = run(&["rotate", "--digits", "18"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unwritable_output_exits_74() {
    let out = run(&["rotate", "--steps", "5", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn help_lists_every_flag_with_default() {
    for sub in ["rotate", "lorenz", "table"] {
        let out = run(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let help = stdout_str(&out);
        assert!(help.contains("default"), "{sub} help documents defaults");
    }
}

#[test]
fn lorenz_native_twins_never_separate() {
    let out = run(&[
        "lorenz",
        "--digits-a",
        "native",
        "--digits-b",
        "native",
        "--t-max",
        "5",
        "--sample-every",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, vec!["t", "sep", "agreed_digits"]);
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] == 17.0));
    assert!(text.contains("# divergence_time=NA"));
}

#[test]
fn lorenz_coarse_twin_reports_divergence_time() {
    let out = run(&[
        "lorenz",
        "--digits-b",
        "7",
        "--t-max",
        "50",
        "--sample-every",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let footer = text
        .lines()
        .find(|l| l.starts_with("# divergence_time="))
        .expect("footer present");
    let dt: f64 = footer
        .trim_start_matches("# divergence_time=")
        .split(',')
        .next()
        .unwrap()
        .parse()
        .expect("finite divergence time");
    assert!(dt > 0.0 && dt < 50.0, "dt {dt}");
    assert!(footer.contains("efolding="));
}

#[test]
fn lorenz_restart_truncation_separates_at_the_instant() {
    let out = run(&[
        "lorenz",
        "--digits-a",
        "native",
        "--digits-b",
        "native",
        "--restart-truncate",
        "3",
        "--t-max",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout_str(&out));
    // zero separation before t = t_max/2, nonzero right after
    assert!(rows.iter().filter(|r| r[0] < 5.0).all(|r| r[1] == 0.0));
    let after: Vec<_> = rows.iter().filter(|r| r[0] >= 5.0 && r[0] < 6.0).collect();
    assert!(after.iter().any(|r| r[1] > 0.0));
}

#[test]
fn table_default_rows() {
    let out = run(&["table", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv_raw(&stdout_str(&out));
    assert_eq!(
        header,
        vec!["precision", "norm_drift", "agreed_digits_vs_best"]
    );
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(),
        vec!["native", "12", "7"]
    );
    // native row reproduces the tiny positive drift
    let drift: f64 = rows[0][1].parse().unwrap();
    assert!(drift > 0.0 && drift < 2e-14);
}

#[test]
fn table_duplicate_levels_agree_fully() {
    let out = run(&["table", "--digits-list", "native,native", "--format", "csv"]);
    let (_, rows) = parse_csv_raw(&stdout_str(&out));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], rows[1][1]);
    assert_eq!(rows[0][2], "17");
    assert_eq!(rows[1][2], "17");
}

#[test]
fn table_full_circle_closes() {
    let out = run(&[
        "table",
        "--steps",
        "72",
        "--digits-list",
        "native",
        "--format",
        "csv",
    ]);
    let (_, rows) = parse_csv_raw(&stdout_str(&out));
    let drift: f64 = rows[0][1].parse().unwrap();
    assert!(drift.abs() < 1e-14, "closure drift {drift}");

    // the phase also closes: error below a picodegree after the full circle
    let out = run(&["rotate", "--steps", "72", "--record-every", "72"]);
    let (_, rows) = parse_csv(&stdout_str(&out));
    let phase_err = rows.last().unwrap()[6];
    assert!(phase_err.abs() < 1e-12, "closure phase error {phase_err}");
}

#[test]
fn table_parallel_output_matches_serial() {
    let args = [
        "table",
        "--digits-list",
        "native,13,11,9,7",
        "--format",
        "csv",
    ];
    let serial = bin()
        .args(args)
        .env("PRECISION_LAB_THREADS", "0")
        .output()
        .unwrap();
    let parallel = bin()
        .args(args)
        .env("PRECISION_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.status.code(), parallel.status.code());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lab.conf");
    std::fs::write(&cfg, "[rotation]\ntheta_deg = 90\nsteps = 4\ndigits = 7\n").unwrap();

    // file values apply
    let out = run(&["rotate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout_str(&out));
    assert_eq!(rows.last().unwrap()[0], 4.0);
    assert_eq!(rows.last().unwrap()[4], 0.0); // exact quarter turns

    // flags win over the file
    let out = run(&["rotate", "--config", cfg.to_str().unwrap(), "--steps", "8"]);
    let (_, rows) = parse_csv(&stdout_str(&out));
    assert_eq!(rows.last().unwrap()[0], 8.0);
}

#[test]
fn config_file_unknown_key_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "[rotation]\nthata_deg = 5\n").unwrap();
    let out = run(&["rotate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("thata_deg"));
}

#[test]
fn missing_config_file_is_io_error() {
    let out = run(&["rotate", "--config", "/no/such/file.conf"]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn extended_precision_available_from_cli() {
    let out = run(&[
        "rotate",
        "--steps",
        "72",
        "--digits",
        "extended",
        "--record-every",
        "72",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout_str(&out));
    let drift = rows.last().unwrap()[4];
    assert!(drift.abs() < 1e-25, "extended drift {drift}");
}
