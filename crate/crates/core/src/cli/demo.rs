use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{exit_code, write_table, CliError};
use crate::reversion::{linear_spec, macmahon_sweep, verify_theorem, GSpec};
use crate::series::rational::factorial;
use crate::series::{MultiIndex, Rational, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoKind {
    /// g = 1/(1 - x): f counts plane trees (Catalan numbers).
    Catalan,
    /// g = exp(x): n! [x^n] f = n^(n-1) labelled rooted trees.
    Cayley,
    /// A = [[1,1],[1,1]]: both sides of the master theorem are binomials.
    Macmahon,
}

pub(super) fn run(which: DemoKind, degree: Option<u32>, out: &mut dyn Write) -> Result<i32, CliError> {
    match which {
        DemoKind::Catalan => catalan(degree.unwrap_or(6), out),
        DemoKind::Cayley => cayley(degree.unwrap_or(5), out),
        DemoKind::Macmahon => macmahon(degree.unwrap_or(4), out),
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn single_variable_spec(g: TruncatedSeries) -> Result<GSpec, CliError> {
    Ok(GSpec::from_series(vec![g])?)
}

fn coefficient_table(
    spec: &GSpec,
    factorial_scaled: bool,
    reference: impl Fn(u32) -> BigInt,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let prob = spec.solve()?;
    let f = prob.f().get(0);
    let mut all_match = true;
    let mut rows = Vec::new();
    for n in 1..=spec.degree() {
        let idx = MultiIndex::new(vec![n]);
        let value = if factorial_scaled { f.coeff_factorial(&idx)? } else { f.coeff(&idx)? };
        let expected = Rational::from_integer(reference(n));
        let ok = value == expected;
        all_match &= ok;
        rows.push([
            n.to_string(),
            value.to_string(),
            expected.to_string(),
            if ok { "ok" } else { "MISMATCH" }.to_string(),
        ]);
    }
    let label = if factorial_scaled { "n! [x^n] f" } else { "[x^n] f" };
    write_table(out, &["n", label, "reference", "status"], &rows)?;
    Ok(all_match)
}

fn theorem_summary(spec: &GSpec, out: &mut dyn Write) -> Result<bool, CliError> {
    let k_max = MultiIndex::new(vec![2; spec.nvars()]);
    let report = verify_theorem(spec, &k_max, spec.degree())?;
    writeln!(
        out,
        "Lagrange-Good, k <= {k_max}, |n| <= {}: {}/{} cells equal",
        spec.degree(),
        report.cells.iter().filter(|c| c.equal).count(),
        report.cells.len()
    )?;
    Ok(report.pass)
}

fn catalan(degree: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let one = TruncatedSeries::one(1, degree);
    let x = TruncatedSeries::variable(1, degree, 0)?;
    let spec = single_variable_spec((&one - &x).invert_unit()?)?;
    writeln!(out, "# g = inv(1 - x1), degree {degree}; reference is the Catalan number C(n-1)")?;
    let table = coefficient_table(&spec, false, |n| binomial(2 * n - 2, n - 1) / BigInt::from(n), out)?;
    let theorem = theorem_summary(&spec, out)?;
    Ok(exit_code(table && theorem))
}

fn cayley(degree: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let x = TruncatedSeries::variable(1, degree, 0)?;
    let spec = single_variable_spec(x.exp_series()?)?;
    writeln!(out, "# g = exp(x1), degree {degree}; reference is n^(n-1)")?;
    let table =
        coefficient_table(&spec, true, |n| if n == 1 { BigInt::one() } else { BigInt::from(n).pow(n - 1) }, out)?;
    let theorem = theorem_summary(&spec, out)?;
    Ok(exit_code(table && theorem))
}

fn macmahon(degree: u32, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = vec![vec![Rational::one(); 2]; 2];
    writeln!(out, "# A = [[1,1],[1,1]], |n| <= {degree}; reference is C(n1+n2, n1)")?;
    let report = macmahon_sweep(&a, degree)?;
    let mut all_match = report.pass;
    let rows: Vec<[String; 5]> = report
        .cells
        .iter()
        .map(|c| {
            let expected = Rational::from_integer(binomial(c.n.degree(), c.n.get(0)));
            let ok = c.equal && c.lhs == expected;
            all_match &= ok;
            [
                c.n.to_string(),
                c.lhs.to_string(),
                c.rhs.to_string(),
                expected.to_string(),
                if ok { "ok" } else { "MISMATCH" }.to_string(),
            ]
        })
        .collect();
    write_table(out, &["n", "[x^n] prod (Ax)_i^n_i", "[x^n] 1/det(I - XA)", "reference", "status"], &rows)?;
    let spec = linear_spec(&a, degree)?;
    let theorem = theorem_summary(&spec, out)?;
    Ok(exit_code(all_match && theorem))
}
