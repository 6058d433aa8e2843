//! Builds a sweep request from an atom table and renders it as CSV, the same
//! path the `graphene-cp` binary takes.
//!
//! `cargo run --release --example cli_sweep`

use graphene_cp::cli::{parse_cli, render};

pub fn run_example() -> graphene_cp::Result<()> {
    let dir = tempfile::tempdir()?;
    let table = dir.path().join("atoms.json");
    std::fs::write(
        &table,
        r#"[{"name": "TestAtom", "alpha0_au": 100.0, "beta0_au": 10.0},
            {"name": "Other", "alpha0_au": 5.0, "beta0_au": 0.0}]"#,
    )?;
    let argv = [
        "graphene-cp",
        "decompose",
        "--separation-m",
        "2e-7",
        "--temperature-k",
        "30:300:3",
        "--atom-file",
        table.to_str().unwrap(),
        "--atom-name",
        "TestAtom",
    ];
    let request = parse_cli(argv)?;
    let out = render(&request)?;
    print!("{}", out.text);
    assert!(!out.failed);
    assert_eq!(out.text.lines().count(), 1 + request.grid.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
