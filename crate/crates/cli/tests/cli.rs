//! End-to-end tests of the `qdf` binary: formats, exit codes and
//! determinism.

use std::process::{Command, Output};

fn qdf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qdf(args);
    assert!(
        out.status.success(),
        "qdf {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

const BENCHMARK_L: &str = "l1=0.75,l2=0.1875,l3=0.05,l4=0.0125";
const BENCHMARK_C: &str = "c1=0.875,c2=-0.525,c3=0.6";
const FROZEN: f64 = 0.27807190511263765;

fn parse_json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid json")
}

#[test]
fn eval_benchmark_state() {
    let json = parse_json(&stdout(&["eval", "--state", BENCHMARK_L, "--format", "json"]));
    let report = &json["report"];
    assert!((report["Q"].as_f64().unwrap() - FROZEN).abs() < 1e-12);
    assert!((report["I"].as_f64().unwrap() - 0.9407818384956238).abs() < 1e-12);
    assert!((report["I_c"].as_f64().unwrap() - 0.6627099333829861).abs() < 1e-12);
    assert_eq!(report["branch"], "B1");
    assert!((report["c_M"].as_f64().unwrap() - 0.875).abs() < 1e-12);
}

#[test]
fn eval_trivial_states() {
    let json = parse_json(&stdout(&[
        "eval",
        "--state",
        "c1=0,c2=0,c3=0",
        "--format",
        "json",
    ]));
    assert_eq!(json["report"]["Q"].as_f64().unwrap(), 0.0);
    assert_eq!(json["report"]["I"].as_f64().unwrap(), 0.0);

    let json = parse_json(&stdout(&[
        "eval",
        "--state",
        "c1=1,c2=-1,c3=1",
        "--format",
        "json",
    ]));
    assert!((json["report"]["Q"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((json["report"]["I"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn eval_with_measurement_oracle() {
    let json = parse_json(&stdout(&[
        "eval", "--state", BENCHMARK_L, "--format", "json", "--grid-n", "32",
    ]));
    let q = json["report"]["Q"].as_f64().unwrap();
    let brute = json["report"]["Q_brute"].as_f64().unwrap();
    assert!((q - brute).abs() < 1e-6);
}

#[test]
fn csv_and_json_carry_identical_values() {
    let csv = stdout(&["eval", "--state", BENCHMARK_L]);
    let json = parse_json(&stdout(&["eval", "--state", BENCHMARK_L, "--format", "json"]));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header, ["Q", "I", "I_c", "branch", "c_M"]);
    for (key, cell) in header.iter().zip(&row) {
        let jv = &json["report"][*key];
        if let Some(expected) = jv.as_f64() {
            assert_eq!(cell.parse::<f64>().unwrap(), expected, "column {key}");
        } else {
            assert_eq!(jv.as_str().unwrap(), *cell, "column {key}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["trajectory", "--state", BENCHMARK_C, "--q-range", "0:1:101"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["surface", "--n", "31", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn trajectory_shows_plateau_then_decay() {
    let csv = stdout(&["trajectory", "--state", BENCHMARK_C, "--q-range", "0:1:101"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,q,Q,I_c,I,branch,frozen");
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 101);

    let q_t = 11.0 / 35.0;
    let mut previous = f64::MAX;
    for row in &rows {
        let q: f64 = row[1].parse().unwrap();
        let discord: f64 = row[2].parse().unwrap();
        let frozen = &row[6];
        if q <= q_t + 1e-12 {
            assert!((discord - FROZEN).abs() < 1e-9, "q={q}");
            assert_eq!(frozen, "true", "q={q}");
        } else {
            assert!(
                discord < previous,
                "discord must decay after the transition"
            );
            assert_eq!(frozen, "false", "q={q}");
            previous = discord;
        }
    }
    let last = rows.last().unwrap();
    assert!(last[2].parse::<f64>().unwrap().abs() < 1e-12);
}

#[test]
fn trajectory_refreezes_under_rtn() {
    // gamma/omega = 1/32; three periods of the oscillation.
    let a = format!("{}", 1025f64.sqrt() / 2.0);
    let t_max = 3.0 * std::f64::consts::TAU / 32.0;
    let csv = stdout(&[
        "trajectory",
        "--state",
        BENCHMARK_C,
        "--schedule",
        &format!("rtn:a={a},gamma=1"),
        "--t-range",
        &format!("0:{t_max}:600"),
    ]);
    let rows: Vec<Vec<String>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 600);
    // The frozen flag must switch off and back on (multiple transitions),
    // and q must leave the Markovian range.
    let flags: Vec<bool> = rows.iter().map(|r| r[6] == "true").collect();
    let mut switches = 0;
    for pair in flags.windows(2) {
        if pair[0] != pair[1] {
            switches += 1;
        }
    }
    assert!(switches >= 2, "only {switches} freeze-flag switches");
    assert!(rows.iter().any(|r| r[1].parse::<f64>().unwrap() > 1.0));
}

#[test]
fn trajectory_of_maximally_mixed_state_is_flat_zero() {
    let csv = stdout(&[
        "trajectory",
        "--state",
        "c1=0,c2=0,c3=0",
        "--q-range",
        "0:1:11",
    ]);
    for row in csv.lines().skip(1) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[2].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn check_freeze_reports() {
    let json = parse_json(&stdout(&[
        "check-freeze",
        "--state",
        BENCHMARK_L,
        "--format",
        "json",
    ]));
    let report = &json["report"];
    assert_eq!(report["condition"], "CondA");
    assert_eq!(report["order_class"], "l1>l2>l3>l4");
    assert_eq!(report["boundary"], false);
    assert!((report["frozen_value"].as_f64().unwrap() - FROZEN).abs() < 1e-12);
    assert!((report["q_transition"].as_f64().unwrap() - 11.0 / 35.0).abs() < 1e-12);
    assert!((report["sudden_rate"].as_f64().unwrap() + 0.875).abs() < 1e-12);

    let json = parse_json(&stdout(&[
        "check-freeze",
        "--state",
        "c1=0.5,c2=0.3,c3=0.1",
        "--format",
        "json",
    ]));
    assert_eq!(json["report"]["condition"], "none");
    assert_eq!(json["report"]["frozen_value"], serde_json::Value::Null);

    // The maximally mixed state satisfies the equalities but not the
    // strict inequalities: a boundary annotation, not a freeze.
    let json = parse_json(&stdout(&[
        "check-freeze",
        "--state",
        "c1=0,c2=0,c3=0",
        "--format",
        "json",
    ]));
    assert_eq!(json["report"]["condition"], "none");
    assert_eq!(json["report"]["boundary"], true);
}

#[test]
fn surface_contains_benchmark_point_and_boundary_hits_node() {
    let csv = stdout(&["surface", "--condition", "cond-a", "--n", "17"]);
    let target = (0.75f64.sqrt(), 0.1875f64.sqrt(), 0.05f64.sqrt());
    let found = csv.lines().skip(1).any(|row| {
        let c: Vec<&str> = row.split(',').collect();
        (c[0].parse::<f64>().unwrap() - target.0).abs() < 1e-12
            && (c[1].parse::<f64>().unwrap() - target.1).abs() < 1e-12
            && (c[2].parse::<f64>().unwrap() - target.2).abs() < 1e-12
    });
    assert!(found, "benchmark point missing from the surface export");

    let csv = stdout(&["boundary", "--n", "5"]);
    let mut node_curves = std::collections::HashSet::new();
    for row in csv.lines().skip(1) {
        let c: Vec<&str> = row.split(',').collect();
        let near_node = c[..3]
            .iter()
            .all(|v| (v.parse::<f64>().unwrap() - 0.5).abs() < 1e-12);
        if near_node {
            node_curves.insert(c[4].to_string());
        }
    }
    assert_eq!(node_curves.len(), 4, "every curve passes through the node");
}

#[test]
fn rate_reports_one_sided_values_at_the_tie() {
    let csv = stdout(&["rate", "--state", BENCHMARK_C, "--q", "0.1"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let cells: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(cells[1], "B1");
    assert!(cells[2].parse::<f64>().unwrap().abs() < 1e-12);

    // Exactly at the transition the branch ties and both one-sided rates
    // are reported.
    let q_t = format!("{}", 1.0 - 0.6 / 0.875);
    let csv = stdout(&["rate", "--state", BENCHMARK_C, "--q", &q_t]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with(&format!("{:.16e},B3,", 1.0 - 0.6 / 0.875)));
    let b3_rate: f64 = rows[0].split(',').nth(2).unwrap().parse().unwrap();
    assert!((b3_rate + 0.875).abs() < 1e-12);
}

#[test]
fn out_flag_writes_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let args = ["trajectory", "--state", BENCHMARK_C, "--q-range", "0:1:11"];
    let direct = stdout(&args);
    let out = qdf(&[
        "trajectory",
        "--state",
        BENCHMARK_C,
        "--q-range",
        "0:1:11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn exit_codes_classify_failures() {
    // 2: malformed request.
    assert_eq!(qdf(&["eval", "--state", "c1=oops"]).status.code(), Some(2));
    assert_eq!(
        qdf(&["eval", "--state", "c1=0.1,c2=0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qdf(&["trajectory", "--state", BENCHMARK_C]).status.code(),
        Some(2),
        "missing range"
    );
    // 3: unphysical state.
    assert_eq!(
        qdf(&["eval", "--state", "c1=0.9,c2=0.2,c3=0.1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qdf(&["eval", "--state", "l1=0.3,l2=0.3,l3=0.3,l4=0.3"])
            .status
            .code(),
        Some(3)
    );
    // 4: unsupported noise regime.
    assert_eq!(
        qdf(&[
            "trajectory",
            "--state",
            BENCHMARK_C,
            "--schedule",
            "rtn:a=0.4,gamma=1",
            "--t-range",
            "0:1:5",
        ])
        .status
        .code(),
        Some(4)
    );
    // 1: evaluation failures.
    assert_eq!(
        qdf(&["rate", "--state", BENCHMARK_C, "--q", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn extended_state_is_accepted_everywhere() {
    let ext = "c11=0.525,c12=0.70,c21=0.42,c22=-0.315,c33=0.6";
    let json = parse_json(&stdout(&["eval", "--state", ext, "--format", "json"]));
    assert!((json["report"]["Q"].as_f64().unwrap() - FROZEN).abs() < 1e-12);

    let json = parse_json(&stdout(&[
        "check-freeze",
        "--state",
        ext,
        "--format",
        "json",
    ]));
    assert_eq!(json["report"]["condition"], "CondA");
}
