mod common;

use std::process::{Command, Output};

use serde_json::Value;

fn ladder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladder"))
        .args(args)
        .output()
        .expect("spawn ladder")
}

fn stdout(args: &[&str]) -> String {
    let out = ladder(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn table1_matches_reference_rows() {
    let (header, rows) = csv_rows(&stdout(&["table1", "--kmax", "10"]));
    assert_eq!(header, ["K", "r1", "r2", "p_max"]);
    assert_eq!(rows.len(), 10);
    for (row, &(k, r1, r2, p)) in rows.iter().zip(common::TABLE1.iter()) {
        assert_eq!(row[0], k as f64);
        assert!((row[1] - r1).abs() <= 1e-3, "{row:?}");
        assert!((row[2] - r2).abs() <= 1e-3, "{row:?}");
        assert!((row[3] - p).abs() <= 1e-3, "{row:?}");
    }
}

#[test]
fn bell_vanishes_for_maximal_entanglement() {
    let v: Value = serde_json::from_str(&stdout(&[
        "bell", "--k", "1", "--x", "1", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["command"], "bell");
    let row = &v["results"][0];
    assert!(row["s_value"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(row["chsh_k1_sum"].as_f64().unwrap(), 3.0);
}

#[test]
fn scan_window_has_one_sign_change() {
    let text = stdout(&[
        "scan", "--k", "1", "--lo", "0", "--hi", "0.85", "--steps", "86",
    ]);
    assert_eq!(text.lines().nth(1), Some("0,1"));
    let (_, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 86);
    let changes: Vec<_> = rows
        .windows(2)
        .filter(|w| (w[0][1] > 0.0) != (w[1][1] > 0.0))
        .map(|w| (w[0][0], w[1][0]))
        .collect();
    assert_eq!(changes, [(0.46, 0.47)]);
}

#[test]
fn pk_cross_check_passes() {
    let (header, rows) = csv_rows(&stdout(&[
        "pk",
        "--k",
        "3",
        "--x",
        "0.7",
        "--alpha-k",
        "-0.4",
    ]));
    let row = &rows[0];
    assert!(row[column(&header, "oracle_residual")] < 1e-12);
    assert!(row[column(&header, "max_zero_violation")] < 1e-12);
    assert_eq!(row[column(&header, "verified")], 1.0);
    assert!(row[column(&header, "pk_general")] <= row[column(&header, "pk_hardy")]);
}

#[test]
fn pk_defaults_to_the_optimal_setting() {
    let (header, rows) = csv_rows(&stdout(&["pk", "--k", "2", "--x", "0.6"]));
    let row = &rows[0];
    let general = row[column(&header, "pk_general")];
    assert!((general - row[column(&header, "pk_hardy")]).abs() < 1e-11);
}

#[test]
fn solve_reports_both_tables() {
    let text = stdout(&["solve", "--k", "2", "--x", "0.464", "--alpha-k", "0.5"]);
    let mut blocks = text.split("\n\n");
    let (h1, chain) = csv_rows(blocks.next().unwrap());
    let (h2, cert) = csv_rows(blocks.next().unwrap());
    assert_eq!(h1, ["k", "alpha", "beta"]);
    assert_eq!(chain.len(), 3);
    assert_eq!(chain[2][1], 0.5);
    assert_eq!(cert[0][column(&h2, "verified")], 1.0);
}

#[test]
fn degrees_round_trip_through_solve() {
    let deg = stdout(&[
        "solve",
        "--k",
        "1",
        "--x",
        "0.464",
        "--alpha-k",
        "30",
        "--degrees",
    ]);
    let rad = stdout(&[
        "solve",
        "--k",
        "1",
        "--x",
        "0.464",
        "--alpha-k",
        &(30f64.to_radians()).to_string(),
    ]);
    let (_, d) = csv_rows(&deg);
    let (_, r) = csv_rows(&rad);
    assert_eq!(d[1][1], 30.0);
    for (a, b) in d.iter().zip(&r) {
        assert!((a[1].to_radians() - b[1]).abs() < 1e-10);
        assert!((a[2].to_radians() - b[2]).abs() < 1e-10);
    }
}

#[test]
fn lhv_bounds_are_zero() {
    let text = stdout(&["lhv", "--k", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    for name in ["chsh_bound", "boschi_bound"] {
        let row = &v["results"][name][0];
        assert_eq!(row["max_s"], 0);
        assert_eq!(row["assignments_checked"], 256);
    }
}

#[test]
fn contradiction_beyond_enumeration_is_parity_only() {
    let small = stdout(&["contradiction", "--k", "4"]);
    assert_eq!(
        small,
        "K,lhs_product,rhs_product,satisfying_assignments,assignments_checked\n4,1,-1,0,1024\n"
    );
    let large = stdout(&["contradiction", "--k", "20"]);
    assert_eq!(large, "K,lhs_product,rhs_product\n20,1,-1\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table1", "--kmax", "12"][..],
        &["lhv", "--k", "8", "--format", "json"],
        &["bell", "--k", "5", "--x", "0.7"],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn csv_and_json_print_identical_numbers() {
    let args = ["pk", "--k", "4", "--x", "0.683"];
    let csv = stdout(&args);
    let json = stdout(&[&args[..], &["--format", "json"]].concat());
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let values: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (name, value) in header.iter().zip(values) {
        assert!(
            json.contains(&format!("\"{name}\": {value}")),
            "{name} = {value}\n{json}"
        );
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = ladder(&["table1", "--kmax", "3", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        stdout(&["table1", "--kmax", "3"])
    );
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 9] = [
        (&["frobnicate"], 2),
        (&["bell", "--k", "1", "--x", "1", "--tol", "0.5"], 2),
        (&["bell", "--k", "1", "--x", "1", "--tol", "0"], 2),
        (&["pk", "--k", "1"], 2),
        (&["pk", "--k", "1", "--x", "0"], 3),
        (&["pk", "--k", "1", "--x", "0.5", "--alpha-k", "0"], 3),
        (
            &["scan", "--k", "1", "--lo", "1", "--hi", "0", "--steps", "5"],
            3,
        ),
        (&["table1", "--kmax", "65"], 4),
        (&["lhv", "--k", "13"], 4),
    ];
    for (args, code) in cases {
        let out = ladder(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn failures_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("never.csv");
    let out = ladder(&["lhv", "--k", "13", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!path.exists());
}
