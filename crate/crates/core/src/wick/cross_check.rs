//! Field-theory identities checked against the reversion module.

use serde::Serialize;

use super::GaussianModel;
use crate::reversion::field::{gamma_jacobian, interaction_jacobian, inverse_propagator, propagator, trace_log_sum};
use crate::reversion::{lhs_coeff, GSpec, ReversionError};
use crate::series::{MultiIndex, Rational, SeriesMatrix, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub pass: bool,
    pub checks: Vec<CrossCheck>,
}

/// `prod_i f_i^{k_i} / k_i!`
pub fn source_monomial(f: &[TruncatedSeries], k: &MultiIndex) -> TruncatedSeries {
    let first = &f[0];
    f.iter()
        .zip(k.exponents())
        .fold(TruncatedSeries::one(first.nvars(), first.degree()), |acc, (s, &e)| &acc * &s.pow(e))
        .scale(&Rational::from_integer(k.factorial()).recip())
}

/// Runs every Gaussian-side identity for `spec`, with source exponents
/// `k <= k_max`:
///
/// - `<phi_i>_N = f_i`
/// - `Z * det(delta_ij - x_i g_ij(f)) = 1`
/// - `<phi^k/k!>_U = (f^k/k!) / det(...)` and `<phi^k/k!>_N = f^k/k!`
/// - `moment_term(k, n) = k! * lhs_coeff(k, n)` for `|n| <= D`
/// - `log(1/det(I - N)) = sum_k tr(N^k)/k` with `N = diag(x) g_ij(f)`
/// - `C^{-1} C = I` and `C^{-1} - dH(f) = dGamma(f)`
pub fn cross_check(spec: &GSpec, k_max: &MultiIndex) -> Result<CrossCheckReport, ReversionError> {
    let (m, d) = (spec.nvars(), spec.degree());
    if k_max.len() != m {
        return Err(ReversionError::IndexLength { got: k_max.len(), expected: m });
    }
    let prob = spec.solve()?;
    let f = prob.f().as_slice();
    let model = GaussianModel::new(spec);
    let lg = prob.lg_matrix()?;
    let det = lg.det()?;
    let inv_det = det.invert_unit()?;
    let z = model.partition_series()?;
    let one = TruncatedSeries::one(m, d);
    let mut checks = Vec::new();
    let mut push = |name: String, pass: bool| checks.push(CrossCheck { name, pass });

    for (i, f_i) in f.iter().enumerate() {
        let unit = MultiIndex::unit(m, i);
        push(format!("one-point <phi_{}>_N = f_{}", i + 1, i + 1), &model.normalized_moment(&unit)?.value == f_i);
    }
    push("partition function Z * det = 1".into(), &z * &det == one);

    let mut unnorm_ok = true;
    let mut factor_ok = true;
    for k in MultiIndex::in_box(k_max) {
        let target = source_monomial(f, &k);
        unnorm_ok &= model.unnormalized_moment(&k)?.value == &target * &inv_det;
        factor_ok &= model.normalized_moment(&k)?.value == target;
    }
    push(format!("unnormalized <phi^k/k!>_U = f^k/k! / det for k <= {k_max}"), unnorm_ok);
    push(format!("moment factorization <phi^k/k!>_N = f^k/k! for k <= {k_max}"), factor_ok);

    let mut bridge_ok = true;
    for k in MultiIndex::in_box(k_max) {
        let k_fact = Rational::from_integer(k.factorial());
        for n in MultiIndex::up_to_degree(m, d) {
            bridge_ok &= model.moment_term(&k, &n)? == lhs_coeff(spec, &k, &n)? * &k_fact;
        }
    }
    push(format!("integration by parts reproduces the coefficient side for k <= {k_max}"), bridge_ok);

    let n_mat = prob.jacobian()?.diag_x_mul()?;
    push("trace-log: log(1/det(I - N)) = sum tr(N^k)/k".into(), inv_det.log_series()? == trace_log_sum(&n_mat)?);

    let c_inv = inverse_propagator(spec)?;
    let c = propagator(spec)?;
    push("propagator: C^-1 C = I".into(), c_inv.mat_mul(&c)? == SeriesMatrix::identity(m, m, d));
    let split = c_inv.mat_sub(&interaction_jacobian(spec, prob.f())?)?;
    push("split: C^-1 - dH(f) = dGamma(f)".into(), split == gamma_jacobian(spec, prob.f())?);
    push("dGamma(f) = delta - x g_ij(f)".into(), gamma_jacobian(spec, prob.f())? == lg);

    Ok(CrossCheckReport { pass: checks.iter().all(|c| c.pass), checks })
}
