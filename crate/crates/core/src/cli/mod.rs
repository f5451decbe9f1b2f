//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check reports a
//! mismatch, 2 for usage, input or parse errors (message on stderr). All
//! numbers are printed as exact rationals.

mod demo;
pub mod expr;
pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::reversion::{lhs_coeff, macmahon_sweep, rhs_coeff, verify_theorem, ReversionError, VerificationReport};
use crate::series::rational::{parse_rational, ParseRationalError};
use crate::series::{MultiIndex, Rational, SeriesError};
use crate::wick::cross_check;
use input::{series_terms, InputError, InputSpec, TermDesc};

pub use demo::DemoKind;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Reversion(#[from] ReversionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Usage(String),
    #[error("bad matrix: {0}")]
    Matrix(String),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "lagrange-good",
    version,
    about = "Exact multivariate power-series reversion and Lagrange-Good checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve f_i = x_i g_i(f) and print the coefficients of f.
    Revert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare both sides of the Lagrange-Good formula over a grid of (k, n).
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Componentwise bound on k, e.g. 2,2.
        #[arg(long)]
        kmax: String,
        /// Bound on |n|; defaults to the input degree.
        #[arg(long)]
        ndeg: Option<u32>,
        #[arg(long)]
        json: bool,
        /// Add this rational to every right-hand value before comparing
        /// (checks that mismatches are detected and reported).
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        perturb_rhs: Option<String>,
    },
    /// Print one coefficient of either side.
    Coeff {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        k: String,
        #[arg(long)]
        n: String,
    },
    /// MacMahon master theorem for a constant matrix.
    Macmahon {
        /// Inline rows like "1,1;1,1", or a file holding a JSON 2-D array of rational strings.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        ndeg: u32,
        #[arg(long)]
        json: bool,
    },
    /// Check the Gaussian-integral identities against the reversion solution.
    QftCheck {
        #[arg(long)]
        input: PathBuf,
        /// Componentwise bound on source exponents; defaults to 2,...,2.
        #[arg(long)]
        kmax: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Built-in examples with reference values.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Lhs,
    Rhs,
}

/// Runs the CLI on `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Revert { input, json } => revert(&input, json, out),
        Command::Verify { input, kmax, ndeg, json, perturb_rhs } => {
            verify(&input, &kmax, ndeg, json, perturb_rhs.as_deref(), out)
        }
        Command::Coeff { input, side, k, n } => coeff(&input, side, &k, &n, out),
        Command::Macmahon { matrix, ndeg, json } => macmahon(&matrix, ndeg, json, out),
        Command::QftCheck { input, kmax, json } => qft_check(&input, kmax.as_deref(), json, out),
        Command::Demo { which, degree } => demo::run(which, degree, out),
    }
}

fn read_input(path: &Path) -> Result<InputSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    Ok(InputSpec::from_json(&text)?)
}

/// Parses "2,1,0" into a multi-index of length `m`.
fn parse_csv_index(src: &str, m: usize, what: &str) -> Result<MultiIndex, CliError> {
    let parts: Result<Vec<u32>, _> = src.split(',').map(|p| p.trim().parse::<u32>()).collect();
    let parts = parts
        .map_err(|_| CliError::Usage(format!("--{what} must be comma-separated nonnegative integers, got {src:?}")))?;
    if parts.len() != m {
        return Err(CliError::Usage(format!("--{what} needs {m} entries, got {}", parts.len())));
    }
    Ok(MultiIndex::new(parts))
}

fn exit_code(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct RevertOutput {
    m: usize,
    degree: u32,
    f: Vec<Vec<TermDesc>>,
}

fn revert(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(path)?;
    let spec = input.to_gspec()?;
    let prob = spec.solve()?;
    if json {
        let report =
            RevertOutput { m: spec.nvars(), degree: spec.degree(), f: prob.f().iter().map(series_terms).collect() };
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
        return Ok(0);
    }
    writeln!(out, "# f_i = x_i g_i(f), m = {}, degree = {}", spec.nvars(), spec.degree())?;
    let rows: Vec<[String; 3]> = prob
        .f()
        .iter()
        .enumerate()
        .flat_map(|(i, f_i)| f_i.terms().map(move |(e, c)| [format!("f{}", i + 1), e.to_string(), c.to_string()]))
        .collect();
    write_table(out, &["component", "exponent", "coefficient"], &rows)?;
    Ok(0)
}

fn verify(
    path: &Path,
    kmax: &str,
    ndeg: Option<u32>,
    json: bool,
    perturb: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let input = read_input(path)?;
    let spec = input.to_gspec()?;
    let k_max = parse_csv_index(kmax, spec.nvars(), "kmax")?;
    let ndeg = ndeg.unwrap_or(spec.degree());
    let mut report = verify_theorem(&spec, &k_max, ndeg)?;
    if let Some(delta) = perturb {
        let delta = parse_rational(delta)?;
        for cell in &mut report.cells {
            cell.rhs += &delta;
            cell.equal = cell.lhs == cell.rhs;
        }
        report.pass = report.cells.iter().all(|c| c.equal);
    }
    write_report(&report, json, out)?;
    Ok(exit_code(report.pass))
}

fn write_report(report: &VerificationReport, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if json {
        writeln!(out, "{}", serde_json::to_string(report).expect("serializable"))?;
        return Ok(());
    }
    let rows: Vec<[String; 5]> = report
        .cells
        .iter()
        .map(|c| {
            let status = if c.equal { "ok" } else { "MISMATCH" };
            [c.k.to_string(), c.n.to_string(), c.lhs.to_string(), c.rhs.to_string(), status.to_string()]
        })
        .collect();
    write_table(out, &["k", "n", "lhs", "rhs", "status"], &rows)?;
    let equal = report.cells.iter().filter(|c| c.equal).count();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    writeln!(out, "{verdict}: {equal}/{} cells equal", report.cells.len())?;
    Ok(())
}

fn coeff(path: &Path, side: Side, k: &str, n: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(path)?;
    let spec = input.to_gspec()?;
    let k = parse_csv_index(k, spec.nvars(), "k")?;
    let n = parse_csv_index(n, spec.nvars(), "n")?;
    let value = match side {
        Side::Lhs => lhs_coeff(&spec, &k, &n)?,
        Side::Rhs => rhs_coeff(&spec.solve()?, &k, &n)?,
    };
    writeln!(out, "{value}")?;
    Ok(0)
}

/// Reads `--matrix`: a path to a JSON 2-D array of rational strings, inline
/// JSON, or inline rows `"1,1;1,1"`.
pub fn parse_matrix(arg: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?
    } else {
        arg.to_string()
    };
    let text = text.trim();
    let rows: Vec<Vec<Rational>> = if text.starts_with('[') {
        let raw: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| CliError::Matrix(e.to_string()))?;
        raw.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect::<Result<_, _>>()?
    } else {
        text.split(';')
            .map(|row| row.split(',').map(|s| parse_rational(s.trim())).collect())
            .collect::<Result<_, _>>()?
    };
    let size = rows.len();
    if size == 0 || rows.iter().any(|r| r.len() != size) {
        return Err(CliError::Matrix(format!("expected a nonempty square matrix, got {size} rows")));
    }
    Ok(rows)
}

fn macmahon(matrix: &str, ndeg: u32, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = parse_matrix(matrix)?;
    let report = macmahon_sweep(&a, ndeg)?;
    write_report(&report, json, out)?;
    Ok(exit_code(report.pass))
}

fn qft_check(path: &Path, kmax: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let input = read_input(path)?;
    let spec = input.to_gspec()?;
    let k_max = match kmax {
        Some(s) => parse_csv_index(s, spec.nvars(), "kmax")?,
        None => MultiIndex::new(vec![2; spec.nvars()]),
    };
    let report = cross_check(&spec, &k_max)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    } else {
        for c in &report.checks {
            writeln!(out, "{}  {}", if c.pass { "ok      " } else { "MISMATCH" }, c.name)?;
        }
        writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" })?;
    }
    Ok(exit_code(report.pass))
}

fn write_table<const N: usize>(out: &mut dyn Write, header: &[&str; N], rows: &[[String; N]]) -> std::io::Result<()> {
    let mut widths = header.map(str::len);
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_indices() {
        assert_eq!(parse_csv_index("2, 1", 2, "k").unwrap(), MultiIndex::new(vec![2, 1]));
        assert!(parse_csv_index("2", 2, "k").is_err());
        assert!(parse_csv_index("a,1", 2, "k").is_err());
        assert!(parse_csv_index("-1,1", 2, "k").is_err());
    }

    #[test]
    fn inline_matrices() {
        let a = parse_matrix("1,1;1,1").unwrap();
        assert_eq!(a.len(), 2);
        let b = parse_matrix(r#"[["1/2","0"],["-1","2"]]"#).unwrap();
        assert_eq!(b[0][0].to_string(), "1/2");
        assert!(parse_matrix("1,1;1").is_err());
        assert!(parse_matrix("1,x").is_err());
    }
}
