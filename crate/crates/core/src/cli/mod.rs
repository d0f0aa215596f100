//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for malformed or inconsistent input, 3 for
//! input that parses but fails numeric validation (a non-unitary family, a
//! zero-probability history, ...). `QLOGIC_TOL` overrides the validation
//! tolerance.

mod scenario_file;

pub use scenario_file::{Param, ScenarioFile, ScenarioFileError};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::catalog;
use crate::lattice::{parse_lattice, to_dot, to_lattice_text};
use crate::laws::classify;
use crate::quantum::{QuantumError, Tolerance};
use crate::query::{compile, evaluate, parse_query};
use crate::scenarios::write_sweep_csv;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable overriding the validation tolerance.
pub const TOL_ENV: &str = "QLOGIC_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "qlogic",
    version,
    about = "Quantum logic lattices and question probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a lattice file and report which lattice laws hold.
    CheckLattice {
        path: PathBuf,
        /// One `key=value` line per law instead of the aligned report.
        #[arg(long)]
        kv: bool,
    },
    /// Evaluate the queries of a scenario file.
    Eval {
        scenario: PathBuf,
        /// Evaluate these queries instead of the file's `[query]` section.
        #[arg(long = "query", short = 'q')]
        queries: Vec<String>,
    },
    /// Sweep a phase parameter of a slit scenario and write CSV.
    Sweep {
        scenario: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in lattice as a lattice file and optionally as DOT.
    Catalog {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(catalog::NAMES))]
        name: String,
        /// Write the lattice file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering of the Hasse diagram.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

/// A failed command: message for standard error plus exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn numeric(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_NUMERIC,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn tolerance(env: Option<&str>) -> Result<Tolerance, Failure> {
    match env {
        None => Ok(Tolerance::default()),
        Some(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t > 0.0)
            .map(Tolerance::with_validation)
            .ok_or_else(|| {
                input(format!(
                    "{TOL_ENV}: expected a positive number, found `{v}`"
                ))
            }),
    }
}

/// Formats like C's `%.*g`: `digits` significant digits, trailing zeros
/// dropped, exponent notation only for very large or small magnitudes.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{exp}", trim(mantissa.to_string()))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    }
}

fn check_lattice(path: &Path, kv: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let text = read(path)?;
    let l = parse_lattice(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    for r in classify(&l) {
        let line = if kv { r.to_kv(&l) } else { r.to_text(&l) };
        writeln!(out, "{line}").map_err(input)?;
    }
    Ok(())
}

fn load_scenario(path: &Path, tol: Tolerance) -> Result<ScenarioFile, Failure> {
    let text = read(path)?;
    ScenarioFile::parse(&text, tol).map_err(|e| {
        let message = format!("{}: {e}", path.display());
        if e.is_numeric() {
            numeric(message)
        } else {
            input(message)
        }
    })
}

fn eval(
    path: &Path,
    queries: &[String],
    tol: Tolerance,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let scenario = load_scenario(path, tol)?;
    let queries: Vec<(Option<usize>, &str)> = if queries.is_empty() {
        scenario
            .queries()
            .iter()
            .map(|(l, q)| (Some(*l), q.as_str()))
            .collect()
    } else {
        queries.iter().map(|q| (None, q.as_str())).collect()
    };
    if queries.is_empty() {
        return Err(input(format!("{}: no queries to evaluate", path.display())));
    }
    for (line, q) in queries {
        let origin = match line {
            Some(l) => format!("{}:{l}: query `{q}`", path.display()),
            None => format!("query `{q}`"),
        };
        let expr = parse_query(q).map_err(|e| input(format!("{origin}: {e}")))?;
        let plan =
            compile(&expr, scenario.families()).map_err(|e| input(format!("{origin}: {e}")))?;
        let p = evaluate(&plan, scenario.prior(), scenario.families(), tol).map_err(|e| {
            let message = format!("{origin}: {e}");
            match e {
                QuantumError::UnknownLabel(_) | QuantumError::DimensionMismatch { .. } => {
                    input(message)
                }
                _ => numeric(message),
            }
        })?;
        writeln!(out, "{q} = {}", format_significant(p, 12)).map_err(input)?;
    }
    Ok(())
}

fn sweep(
    path: &Path,
    param: &str,
    (from, to, steps): (f64, f64, usize),
    dest: Option<&Path>,
    tol: Tolerance,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let scenario = load_scenario(path, tol)?;
    let rows = scenario.sweep(param, from, to, steps).map_err(|e| {
        let message = format!("{}: {e}", path.display());
        if e.is_numeric() {
            numeric(message)
        } else {
            input(message)
        }
    })?;
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf).expect("writing to memory");
    match dest {
        Some(p) => fs::write(p, &buf).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => out.write_all(&buf).map_err(input),
    }
}

fn catalog_cmd(
    name: &str,
    dest: Option<&Path>,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let l =
        catalog::by_name(name).ok_or_else(|| input(format!("unknown catalog name `{name}`")))?;
    let text = to_lattice_text(&l);
    match dest {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes()).map_err(input)?,
    }
    if let Some(p) = dot {
        write_file(p, &to_dot(&l, name))?;
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. `tol_env` is the value of `QLOGIC_TOL`, if set.
pub fn run<I, T>(args: I, tol_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = tolerance(tol_env).and_then(|tol| match &cli.command {
        Command::CheckLattice { path, kv } => check_lattice(path, *kv, out),
        Command::Eval { scenario, queries } => eval(scenario, queries, tol, out),
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            out: dest,
        } => sweep(
            scenario,
            param,
            (*from, *to, *steps),
            dest.as_deref(),
            tol,
            out,
        ),
        Command::Catalog {
            name,
            out: dest,
            dot,
        } => catalog_cmd(name, dest.as_deref(), dot.as_deref(), out),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(0.5, 12), "0.5");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_significant(0.999_999_999_999_9, 12), "1");
        assert_eq!(format_significant(1.25e-7, 12), "1.25e-7");
        assert_eq!(format_significant(123.456, 4), "123.5");
    }

    #[test]
    fn tolerance_override() {
        assert_eq!(tolerance(None).unwrap(), Tolerance::default());
        assert_eq!(tolerance(Some("1e-6")).unwrap().validation, 1e-6);
        assert_eq!(tolerance(Some("x")).unwrap_err().code, EXIT_INPUT);
        assert_eq!(tolerance(Some("-1")).unwrap_err().code, EXIT_INPUT);
    }
}
