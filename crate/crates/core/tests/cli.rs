//! End-to-end runs of the `graphene-cp` binary.

use graphene_cp::cli::CSV_HEADER;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphene-cp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn energy_at_zero_temperature() {
    let o = run(&["energy-t0", "--separation-m", "2e-7", "--alpha0-au", "100", "--beta0-au", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 15);
    assert_eq!(row[0], "2e-7");
    assert_eq!(row[1], "0e0");
    let e0: f64 = row[3].parse().unwrap();
    assert!(e0 < 0.0);
    assert!(row[4].is_empty());
    assert!(lines.next().is_none());
}

#[test]
fn zero_temperature_free_energy_is_a_usage_error() {
    let o = run(&["--temperature-k", "0", "free-energy", "--separation-m", "2e-7", "--alpha0-au", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("energy-t0"));
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["energy-t0", "--alpha0-au", "1"],
        vec!["energy-t0", "--separation-m", "1e-7", "--alpha0-au", "1", "--unknown"],
        vec!["free-energy", "--separation-m", "1e-7", "--alpha0-au", "1", "--temperature-k", "1:2"],
        vec!["free-energy", "--separation-m", "-1e-7", "--alpha0-au", "1", "--temperature-k", "1"],
        vec!["energy-t0", "--separation-m", "1e-7", "--alpha0-au", "-1"],
        vec!["no-such-command"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn atom_table_lookup() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("atoms.json");
    std::fs::write(&table, r#"[{"name": "TestAtom", "alpha0_au": 100, "beta0_au": 0}]"#).unwrap();
    let t = table.to_str().unwrap();
    let ok = run(&["energy-t0", "--separation-m", "2e-7", "--atom-file", t, "--atom-name", "TestAtom"]);
    let inline = run(&["energy-t0", "--separation-m", "2e-7", "--alpha0-au", "100", "--beta0-au", "0"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), stdout(&inline));
    // Lookups are exact and case-sensitive.
    let missing = run(&["energy-t0", "--separation-m", "2e-7", "--atom-file", t, "--atom-name", "testatom"]);
    assert_eq!(missing.status.code(), Some(1));
    std::fs::write(&table, r#"[{"name": "X", "alpha0_au": 1, "beta0_au": 0, "colour": "red"}]"#).unwrap();
    let unknown = run(&["energy-t0", "--separation-m", "2e-7", "--atom-file", t, "--atom-name", "X"]);
    assert_ne!(unknown.status.code(), Some(0));
}

#[test]
fn geometric_grid_rows_in_order() {
    let o = run(&[
        "asymptote",
        "--separation-m",
        "2e-7",
        "--temperature-k",
        "1:300:25",
        "--alpha0-au",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let temps: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(temps.len(), 25);
    assert_eq!(temps[0], 1.0);
    assert_eq!(temps[24], 300.0);
    assert!(temps.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&[
        "free-energy",
        "--separation-m",
        "2e-7",
        "--separation-m",
        "4e-7",
        "--temperature-k",
        "77",
        "--alpha0-au",
        "50",
        "--beta0-au",
        "5",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["a_m"], 2e-7);
    assert_eq!(rows[1]["a_m"], 4e-7);
    assert!(rows[0]["schema_version"].is_string());
    assert!(rows[0]["F_numeric_J"].as_f64().unwrap() < 0.0);
    assert!(rows[0]["S_J_per_K"].is_null());
    // Only the output file is left behind.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn repeated_decompose_is_byte_identical() {
    let args = [
        "decompose",
        "--separation-m",
        "1e-7",
        "--temperature-k",
        "10:100:4",
        "--alpha0-au",
        "20",
        "--beta0-au",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zero_atom_decomposes_to_zeros() {
    let o = run(&["decompose", "--separation-m", "1e-7", "--temperature-k", "5", "--alpha0-au", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    for cell in &row[3..9] {
        assert_eq!(cell.parse::<f64>().unwrap(), 0.0);
    }
}
