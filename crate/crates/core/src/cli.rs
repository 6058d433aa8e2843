//! Command-line front end.
//!
//! One positional command plus flags; results go to stdout or, atomically,
//! to `--out`. Exit codes: 0 success, 1 usage error, 2 numeric failure in at
//! least one record (or a failed `validate` check).

use crate::asymptotics::{delta1_asymptotic, delta2_l0_asymptotic, delta2_lgeq1_asymptotic, entropy_low_t};
use crate::error::{Error, Result};
use crate::lifshitz::{energy_zero_t, entropy, free_energy_breakdown, free_energy_full, EvalOptions};
use crate::units::{find_atom, load_atom_table, make_thermal_geometry, AtomSpec, AtomTableOptions, GrapheneModel, CODATA_2018};
use crate::validation;
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const SCHEMA_VERSION: &str = "graphene-cp/1";

pub const CSV_HEADER: &str = "a_m,T_K,tau,E0_J,d1_J,d2l1_J,d2l0_J,F_numeric_J,F_decomp_J,S_J_per_K,d1_asym_J,d2l1_asym_J,d2l0_asym_J,S_asym_J_per_K,flags";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Zero-temperature energy.
    #[value(name = "energy-t0")]
    EnergyT0,
    /// Full free energy.
    FreeEnergy,
    /// Entropy from the numerical free energy, with its low-T form.
    Entropy,
    /// All free-energy pieces with their low-T counterparts.
    Decompose,
    /// Closed-form low-temperature pieces only.
    Asymptote,
    /// Decompose plus entropy over a grid.
    Sweep,
    /// Run the self-validation suite.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "graphene-cp", version, about = "Casimir-Polder free energy and entropy of an atom above graphene")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Atom-sheet separation in metres (repeatable).
    #[arg(long = "separation-m")]
    pub separation_m: Vec<f64>,
    /// Temperature in kelvin, or `lo:hi:n` for n geometrically spaced values (repeatable).
    #[arg(long = "temperature-k")]
    pub temperature_k: Vec<String>,
    /// JSON atom table: [{"name", "alpha0_au", "beta0_au"}].
    #[arg(long)]
    pub atom_file: Option<PathBuf>,
    /// Entry to pick from the atom table (case-sensitive).
    #[arg(long)]
    pub atom_name: Option<String>,
    /// Static polarizability in atomic units; overrides the table.
    #[arg(long = "alpha0-au")]
    pub alpha0_au: Option<f64>,
    /// Static magnetic susceptibility in atomic units; overrides the table.
    #[arg(long = "beta0-au")]
    pub beta0_au: Option<f64>,
    /// Relative tolerance for sums and quadratures.
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Most Matsubara terms to sum before reporting a truncation error.
    #[arg(long, default_value_t = 1_000_000)]
    pub l_max: u64,
    /// Use the exact g̃ instead of the standard approximation.
    #[arg(long)]
    pub exact_gtilde: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub command: Command,
    pub atom: AtomSpec,
    /// `(a [m], T [K])` points in output order.
    pub grid: Vec<(f64, f64)>,
    pub opts: EvalOptions,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// Expands one `--temperature-k` value.
pub fn parse_temperatures(spec: &str) -> Result<Vec<f64>> {
    let bad = || usage(format!("malformed temperature '{spec}'; expected a number or lo:hi:n"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(vec![one.trim().parse().map_err(|_| bad())?]),
        [lo, hi, n] => {
            let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 || (n == 1 && hi != lo) {
                return Err(bad());
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            let step = (hi / lo).ln() / (n - 1) as f64;
            Ok((0..n)
                .map(|k| if k == n - 1 { hi } else { lo * (step * k as f64).exp() })
                .collect())
        }
        _ => Err(bad()),
    }
}

fn resolve_atom(args: &Args) -> Result<AtomSpec> {
    let base = match &args.atom_file {
        Some(path) => {
            let table = load_atom_table(path, AtomTableOptions::default())?;
            let name = args
                .atom_name
                .as_deref()
                .ok_or_else(|| usage("--atom-file needs --atom-name"))?;
            Some(
                find_atom(&table, name)
                    .cloned()
                    .ok_or_else(|| usage(format!("atom '{name}' not found in {}", path.display())))?,
            )
        }
        None if args.atom_name.is_some() => return Err(usage("--atom-name needs --atom-file")),
        None => None,
    };
    let (alpha, beta) = match (&base, args.alpha0_au, args.beta0_au) {
        (_, Some(a), Some(b)) => (crate::units::alpha0_from_atomic_units(a)?, crate::units::alpha0_from_atomic_units(b)?),
        (Some(atom), a, b) => (
            a.map(crate::units::alpha0_from_atomic_units).transpose()?.unwrap_or(atom.alpha0),
            b.map(crate::units::alpha0_from_atomic_units).transpose()?.unwrap_or(atom.beta0),
        ),
        (None, Some(a), None) => (crate::units::alpha0_from_atomic_units(a)?, 0.0),
        (None, _, _) => return Err(usage("give --alpha0-au or --atom-file with --atom-name")),
    };
    let name = base.map(|a| a.name).unwrap_or_else(|| "inline".into());
    AtomSpec::new(name, alpha, beta).map_err(|e| usage(e.to_string()))
}

/// Builds a request from parsed arguments.
pub fn request_from_args(args: Args) -> Result<RunRequest> {
    let opts = EvalOptions {
        rel_tol: args.rel_tol,
        l_max: args.l_max,
        graphene: GrapheneModel {
            use_exact_gtilde: args.exact_gtilde,
            ..GrapheneModel::default()
        },
        ..EvalOptions::default()
    };
    opts.validate().map_err(|e| usage(e.to_string()))?;
    if args.command == Command::Validate {
        return Ok(RunRequest {
            command: args.command,
            atom: validation::reference_atom(validation::REFERENCE_SEPARATION),
            grid: Vec::new(),
            opts,
            format: args.format,
            out: args.out,
        });
    }
    if args.separation_m.is_empty() {
        return Err(usage("--separation-m is required"));
    }
    if let Some(a) = args.separation_m.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
        return Err(usage(format!("separation must be positive, got {a}")));
    }
    let mut temperatures = Vec::new();
    for t in &args.temperature_k {
        temperatures.extend(parse_temperatures(t)?);
    }
    if let Some(t) = temperatures.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(usage(format!("temperature must be non-negative, got {t}")));
    }
    if args.command == Command::EnergyT0 {
        temperatures = vec![0.0];
    } else if temperatures.is_empty() {
        return Err(usage("--temperature-k is required for this command"));
    } else if temperatures.contains(&0.0) {
        return Err(usage("T = 0 has no thermal free energy; use the energy-t0 command"));
    }
    let atom = resolve_atom(&args)?;
    let grid = args
        .separation_m
        .iter()
        .flat_map(|&a| temperatures.iter().map(move |&t| (a, t)))
        .collect();
    Ok(RunRequest {
        command: args.command,
        atom,
        grid,
        opts,
        format: args.format,
        out: args.out,
    })
}

/// Parses argv (including the program name).
pub fn parse_cli<I, T>(argv: I) -> Result<RunRequest>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| usage(e.to_string()))?;
    request_from_args(args)
}

/// One output row. `None` renders as an empty cell or JSON null.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct Record {
    pub a_m: f64,
    pub T_K: f64,
    pub tau: f64,
    pub E0_J: Option<f64>,
    pub d1_J: Option<f64>,
    pub d2l1_J: Option<f64>,
    pub d2l0_J: Option<f64>,
    pub F_numeric_J: Option<f64>,
    pub F_decomp_J: Option<f64>,
    pub S_J_per_K: Option<f64>,
    pub d1_asym_J: Option<f64>,
    pub d2l1_asym_J: Option<f64>,
    pub d2l0_asym_J: Option<f64>,
    pub S_asym_J_per_K: Option<f64>,
    pub flags: Vec<String>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn keep(r: Result<f64>, name: &str, flags: &mut Vec<String>) -> Option<f64> {
    match r {
        Ok(v) => finite(v),
        Err(e) => {
            flags.push(format!("{name}: {e}"));
            None
        }
    }
}

/// Computes one grid point.
pub fn evaluate(command: Command, atom: &AtomSpec, a: f64, t: f64, opts: &EvalOptions) -> Result<Record> {
    let g = &opts.graphene;
    let tg = make_thermal_geometry(a, t, g, &CODATA_2018)?;
    let mut rec = Record {
        a_m: a,
        T_K: t,
        tau: tg.tau,
        ..Record::default()
    };
    let mut flags = Vec::new();
    let with_asymptotes = |rec: &mut Record| {
        rec.d1_asym_J = finite(delta1_asymptotic(atom, &tg, g));
        rec.d2l1_asym_J = finite(delta2_lgeq1_asymptotic(atom, &tg, g));
        rec.d2l0_asym_J = finite(delta2_l0_asymptotic(atom, &tg, g));
        rec.S_asym_J_per_K = finite(entropy_low_t(atom, &tg, g));
    };
    match command {
        Command::EnergyT0 => {
            rec.E0_J = keep(energy_zero_t(atom, &tg, opts), "E0", &mut flags);
            rec.F_numeric_J = rec.E0_J;
        }
        Command::FreeEnergy => {
            rec.E0_J = keep(energy_zero_t(atom, &tg, opts), "E0", &mut flags);
            rec.F_numeric_J = keep(free_energy_full(atom, &tg, opts), "F", &mut flags);
        }
        Command::Entropy => {
            rec.S_J_per_K = keep(entropy(atom, &tg, opts), "S", &mut flags);
            rec.S_asym_J_per_K = finite(entropy_low_t(atom, &tg, g));
        }
        Command::Asymptote => {
            rec.E0_J = keep(energy_zero_t(atom, &tg, opts), "E0", &mut flags);
            with_asymptotes(&mut rec);
        }
        Command::Decompose | Command::Sweep => {
            let b = free_energy_breakdown(atom, &tg, opts)?;
            flags.extend(b.flags.iter().cloned());
            rec.E0_J = finite(b.e0);
            rec.d1_J = finite(b.d1);
            rec.d2l1_J = finite(b.d2_lgeq1);
            rec.d2l0_J = finite(b.d2_l0);
            rec.F_numeric_J = finite(b.f_total_numeric);
            rec.F_decomp_J = finite(b.f_total_decomposed);
            with_asymptotes(&mut rec);
            if command == Command::Sweep {
                rec.S_J_per_K = keep(entropy(atom, &tg, opts), "S", &mut flags);
            }
        }
        Command::Validate => return Err(usage("validate has no grid records")),
    }
    rec.flags = flags;
    Ok(rec)
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

/// Quotes a CSV field when needed.
fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let cells = [
            format!("{:e}", r.a_m),
            format!("{:e}", r.T_K),
            format!("{:e}", r.tau),
            cell(r.E0_J),
            cell(r.d1_J),
            cell(r.d2l1_J),
            cell(r.d2l0_J),
            cell(r.F_numeric_J),
            cell(r.F_decomp_J),
            cell(r.S_J_per_K),
            cell(r.d1_asym_J),
            cell(r.d2l1_asym_J),
            cell(r.d2l0_asym_J),
            cell(r.S_asym_J_per_K),
            csv_text(&r.flags.join("; ")),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    schema_version: &'static str,
    #[serde(flatten)]
    record: &'a Record,
}

pub fn to_json(records: &[Record]) -> Result<String> {
    let rows: Vec<JsonRecord> = records
        .iter()
        .map(|record| JsonRecord {
            schema_version: SCHEMA_VERSION,
            record,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows)?;
    s.push('\n');
    Ok(s)
}

/// Rendered output of a request.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    /// True when any record (or validation check) failed.
    pub failed: bool,
}

fn render_validation(format: OutputFormat) -> Result<Rendered> {
    let outcomes = validation::run_all();
    let failed = outcomes.iter().any(|o| !o.passed);
    let text = match format {
        OutputFormat::Csv => {
            let mut s = String::from("id,check,passed,detail\n");
            for o in &outcomes {
                s.push_str(&format!("{},{},{},{}\n", o.id, csv_text(o.name), o.passed, csv_text(&o.detail)));
            }
            s
        }
        OutputFormat::Json => serde_json::to_string_pretty(&outcomes)? + "\n",
    };
    Ok(Rendered { text, failed })
}

/// Computes every grid point (in parallel) and formats the output in grid order.
pub fn render(req: &RunRequest) -> Result<Rendered> {
    if req.command == Command::Validate {
        return render_validation(req.format);
    }
    let records: Vec<Record> = req
        .grid
        .par_iter()
        .map(|&(a, t)| {
            evaluate(req.command, &req.atom, a, t, &req.opts).unwrap_or_else(|e| Record {
                a_m: a,
                T_K: t,
                tau: f64::NAN,
                flags: vec![e.to_string()],
                ..Record::default()
            })
        })
        .collect();
    let failed = records.iter().any(|r| !r.flags.is_empty());
    let text = match req.format {
        OutputFormat::Csv => to_csv(&records),
        OutputFormat::Json => to_json(&records)?,
    };
    Ok(Rendered { text, failed })
}

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomically(path: &std::path::Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Runs a request, writing output; returns the process exit code.
pub fn run(req: &RunRequest) -> i32 {
    let rendered = match render(req) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &req.out {
        Some(path) => write_atomically(path, &rendered.text),
        None => std::io::stdout()
            .lock()
            .write_all(rendered.text.as_bytes())
            .map_err(Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if rendered.failed {
        2
    } else {
        0
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match request_from_args(args) {
        Ok(req) => run(&req),
        Err(e) => {
            eprintln!("{e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_energy_request() {
        let r = parse_cli(["graphene-cp", "energy-t0", "--separation-m", "2e-7", "--alpha0-au", "100", "--beta0-au", "0"])
            .unwrap();
        assert_eq!(r.grid, vec![(2e-7, 0.0)]);
        assert_eq!(r.atom.beta0, 0.0);
    }

    #[test]
    fn geometric_range() {
        let t = parse_temperatures("1:300:25").unwrap();
        assert_eq!(t.len(), 25);
        assert_eq!(t[0], 1.0);
        assert_eq!(t[24], 300.0);
        let q = t[1] / t[0];
        assert!(t.windows(2).all(|w| ((w[1] / w[0]) / q - 1.0).abs() < 1e-12));
        for bad in ["1:2", "0:3:4", "3:1:4", "a", "1:2:0", "1:2:x"] {
            assert!(matches!(parse_temperatures(bad), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn zero_temperature_free_energy_is_usage_error() {
        let e = parse_cli(["graphene-cp", "--temperature-k", "0", "free-energy", "--separation-m", "1e-7", "--alpha0-au", "1"])
            .unwrap_err();
        assert!(e.to_string().contains("energy-t0"));
    }

    #[test]
    fn missing_separation_and_unknown_flag() {
        assert!(matches!(parse_cli(["graphene-cp", "energy-t0", "--alpha0-au", "1"]), Err(Error::Usage(_))));
        assert!(matches!(
            parse_cli(["graphene-cp", "energy-t0", "--separation-m", "1e-7", "--bogus"]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn zero_atom_record_is_all_zero() {
        let atom = AtomSpec::new("none", 0.0, 0.0).unwrap();
        let r = evaluate(Command::Decompose, &atom, 1e-7, 1.0, &EvalOptions::default()).unwrap();
        for v in [r.E0_J, r.d1_J, r.d2l1_J, r.d2l0_J, r.F_numeric_J, r.F_decomp_J, r.d1_asym_J, r.d2l1_asym_J] {
            assert_eq!(v, Some(0.0));
        }
        assert!(r.flags.is_empty());
    }

    #[test]
    fn csv_cells() {
        let rec = Record {
            a_m: 2e-7,
            T_K: 300.0,
            tau: 0.5,
            E0_J: Some(-1.25e-30),
            flags: vec!["x: a, b".into()],
            ..Record::default()
        };
        let csv = to_csv(&[rec]);
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(line, "2e-7,3e2,5e-1,-1.25e-30,,,,,,,,,,,\"x: a, b\"");
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn json_has_schema_and_nulls() {
        let json = to_json(&[Record::default()]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["schema_version"], SCHEMA_VERSION);
        assert!(v[0]["E0_J"].is_null());
    }
}
