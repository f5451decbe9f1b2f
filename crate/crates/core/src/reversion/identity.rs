use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::{GSpec, ReversionError, ReversionProblem};
use crate::series::{rational, MultiIndex, Rational, SeriesVector, TruncatedSeries};

/// One `(k, n)` comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationCell {
    pub k: MultiIndex,
    pub n: MultiIndex,
    #[serde(serialize_with = "rational::serialize")]
    pub lhs: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub rhs: Rational,
    pub equal: bool,
}

/// Cells in deterministic order (`k` graded-lex, then `n` graded-lex).
/// Serializes as `{"pass": bool, "cells": [{k, n, lhs, rhs, equal}]}` with
/// rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub cells: Vec<VerificationCell>,
}

impl VerificationReport {
    fn from_cells(cells: Vec<VerificationCell>) -> Self {
        VerificationReport { pass: cells.iter().all(|c| c.equal), cells }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &VerificationCell> {
        self.cells.iter().filter(|c| !c.equal)
    }
}

fn check_len(idx: &MultiIndex, m: usize) -> Result<(), ReversionError> {
    if idx.len() != m {
        return Err(ReversionError::IndexLength { got: idx.len(), expected: m });
    }
    Ok(())
}

fn check_degree(n: &MultiIndex, max: u32) -> Result<(), ReversionError> {
    if n.degree() > max {
        return Err(ReversionError::DegreeOutOfRange { got: n.degree(), max });
    }
    Ok(())
}

fn g_product(spec: &GSpec, n: &MultiIndex) -> TruncatedSeries {
    spec.g()
        .iter()
        .zip(n.exponents())
        .fold(TruncatedSeries::one(spec.nvars(), spec.degree()), |acc, (g, &e)| &acc * &g.pow(e))
}

// (n!/k!) [x^{n-k}] prod g_i^{n_i}, zero unless k <= n
fn lhs_from_product(product: &TruncatedSeries, k: &MultiIndex, n: &MultiIndex) -> Result<Rational, ReversionError> {
    let Some(shift) = n.checked_sub(k) else {
        return Ok(Rational::zero());
    };
    let ratio = Rational::new(n.factorial(), k.factorial());
    Ok(product.coeff(&shift)? * ratio)
}

fn f_monomial(f: &SeriesVector, k: &MultiIndex) -> TruncatedSeries {
    let first = f.get(0);
    let prod = f
        .iter()
        .zip(k.exponents())
        .fold(TruncatedSeries::one(first.nvars(), first.degree()), |acc, (s, &e)| &acc * &s.pow(e));
    prod.scale(&Rational::from_integer(k.factorial()).recip())
}

/// Left side: the coefficient of `x^n / n!` in `(x^k / k!) prod_i g_i^{n_i}`,
/// i.e. `(n!/k!) [x^{n-k}] prod g_i^{n_i}`, and 0 when `k <= n` fails.
pub fn lhs_coeff(spec: &GSpec, k: &MultiIndex, n: &MultiIndex) -> Result<Rational, ReversionError> {
    check_len(k, spec.nvars())?;
    check_len(n, spec.nvars())?;
    check_degree(n, spec.degree())?;
    if !k.le_componentwise(n) {
        return Ok(Rational::zero());
    }
    lhs_from_product(&g_product(spec, n), k, n)
}

/// Right side: the coefficient of `x^n / n!` in
/// `(f^k / k!) / det(delta_ij - x_i g_ij(f))`.
pub fn rhs_coeff(prob: &ReversionProblem, k: &MultiIndex, n: &MultiIndex) -> Result<Rational, ReversionError> {
    let spec = prob.spec();
    check_len(k, spec.nvars())?;
    check_len(n, spec.nvars())?;
    check_degree(n, spec.degree())?;
    let series = &f_monomial(prob.f(), k) * &prob.inverse_determinant()?;
    Ok(series.coeff_factorial(n)?)
}

/// Compares both sides for every `k <= k_max` (componentwise) and every
/// `|n| <= ndeg`. Mismatches are reported in the cells, not as errors.
pub fn verify_theorem(spec: &GSpec, k_max: &MultiIndex, ndeg: u32) -> Result<VerificationReport, ReversionError> {
    check_len(k_max, spec.nvars())?;
    if ndeg > spec.degree() {
        return Err(ReversionError::DegreeOutOfRange { got: ndeg, max: spec.degree() });
    }
    let prob = spec.solve()?;
    let inv_det = prob.inverse_determinant()?;
    let ns = MultiIndex::up_to_degree(spec.nvars(), ndeg);
    let products: HashMap<&MultiIndex, TruncatedSeries> = ns.iter().map(|n| (n, g_product(spec, n))).collect();

    let mut cells = Vec::new();
    for k in MultiIndex::in_box(k_max) {
        let rhs_series = &f_monomial(prob.f(), &k) * &inv_det;
        for n in &ns {
            let lhs = lhs_from_product(&products[n], &k, n)?;
            let rhs = rhs_series.coeff_factorial(n)?;
            cells.push(VerificationCell { k: k.clone(), n: n.clone(), equal: lhs == rhs, lhs, rhs });
        }
    }
    Ok(VerificationReport::from_cells(cells))
}

/// `g_i = sum_j A_ij x_j`, the linear specialisation.
pub fn linear_spec(a: &[Vec<Rational>], degree: u32) -> Result<GSpec, ReversionError> {
    let m = a.len();
    let mut g = Vec::with_capacity(m);
    for row in a {
        if row.len() != m {
            return Err(ReversionError::SpecLength { got: row.len(), expected: m });
        }
        let terms = row.iter().enumerate().map(|(j, c)| (MultiIndex::unit(m, j), c.clone()));
        g.push(TruncatedSeries::from_terms(m, degree, terms)?);
    }
    GSpec::from_series(g)
}

fn macmahon_pair(
    spec: &GSpec,
    prob: &ReversionProblem,
    n: &MultiIndex,
) -> Result<(Rational, Rational), ReversionError> {
    let zero = MultiIndex::zeros(n.len());
    let scale = Rational::from_integer(n.factorial()).recip();
    let lhs = lhs_coeff(spec, &zero, n)? * &scale;
    let rhs = rhs_coeff(prob, &zero, n)? * &scale;
    Ok((lhs, rhs))
}

/// MacMahon master theorem at one exponent: returns
/// `([x^n] prod_i (sum_j A_ij x_j)^{n_i}, [x^n] 1/det(I - diag(x) A))`.
pub fn macmahon_check(a: &[Vec<Rational>], n: &MultiIndex) -> Result<(Rational, Rational), ReversionError> {
    check_len(n, a.len())?;
    let spec = linear_spec(a, n.degree())?;
    let prob = spec.solve()?;
    macmahon_pair(&spec, &prob, n)
}

/// [`macmahon_check`] over every `|n| <= ndeg`; cells carry `k = 0` and the
/// raw (unnormalised) coefficients.
pub fn macmahon_sweep(a: &[Vec<Rational>], ndeg: u32) -> Result<VerificationReport, ReversionError> {
    let spec = linear_spec(a, ndeg)?;
    let prob = spec.solve()?;
    let inv_det = prob.inverse_determinant()?;
    let m = spec.nvars();
    let mut cells = Vec::new();
    for n in MultiIndex::up_to_degree(m, ndeg) {
        let lhs = g_product(&spec, &n).coeff(&n)?;
        let rhs = inv_det.coeff(&n)?;
        cells.push(VerificationCell { k: MultiIndex::zeros(m), n, equal: lhs == rhs, lhs, rhs });
    }
    Ok(VerificationReport::from_cells(cells))
}
