//! Quadratic/interaction split of `Gamma`.
//!
//! `Gamma(phi) = C^{-1} phi - H(phi)` with `[C^{-1}]_ij = delta_ij - x_i w^[1]_ij`
//! and `H` collecting the tensors of order `>= 2`. Consequently
//! `dGamma = C^{-1} - dH`, and `det dGamma(f)` is the Lagrange-Good
//! denominator.

use num_bigint::BigInt;

use super::solve::jacobian;
use super::{GSpec, ReversionError};
use crate::series::{MultiIndex, Rational, SeriesMatrix, SeriesVector, TruncatedSeries};

/// `w^[1]_ij = [x_j] g_i`.
pub fn linear_tensor(spec: &GSpec) -> Vec<Vec<Rational>> {
    let m = spec.nvars();
    (0..m)
        .map(|i| (0..m).map(|j| spec.g().get(i).coeff(&MultiIndex::unit(m, j)).unwrap_or_default()).collect())
        .collect()
}

/// `C^{-1} = I - diag(x) W1`.
pub fn inverse_propagator(spec: &GSpec) -> Result<SeriesMatrix, ReversionError> {
    let (m, d) = (spec.nvars(), spec.degree());
    let w1 = SeriesMatrix::from_constants(&linear_tensor(spec), m, d)?;
    Ok(SeriesMatrix::identity(m, m, d).mat_sub(&w1.diag_x_mul()?)?)
}

/// The free propagator `C`, inverted as a Neumann series (the constant part of
/// `C^{-1}` is the identity).
pub fn propagator(spec: &GSpec) -> Result<SeriesMatrix, ReversionError> {
    Ok(inverse_propagator(spec)?.inverse_near_identity()?)
}

/// `dGamma(at) = I - diag(x) (dg)(at)`.
pub fn gamma_jacobian(spec: &GSpec, at: &SeriesVector) -> Result<SeriesMatrix, ReversionError> {
    let (m, d) = (spec.nvars(), spec.degree());
    Ok(SeriesMatrix::identity(m, m, d).mat_sub(&jacobian(spec, at)?.diag_x_mul()?)?)
}

/// `dH(at) = C^{-1} - dGamma(at)`.
pub fn interaction_jacobian(spec: &GSpec, at: &SeriesVector) -> Result<SeriesMatrix, ReversionError> {
    Ok(inverse_propagator(spec)?.mat_sub(&gamma_jacobian(spec, at)?)?)
}

/// `sum_{k=1..D} tr(N^k) / k` for `N` without constant terms; this is
/// `-log det(I - N)`.
pub fn trace_log_sum(n: &SeriesMatrix) -> Result<TruncatedSeries, ReversionError> {
    if !n.is_nilpotent_part() {
        return Err(crate::series::SeriesError::NonZeroConstantTerm.into());
    }
    let mut acc = TruncatedSeries::zero(n.nvars(), n.degree());
    let mut power = SeriesMatrix::identity(n.size(), n.nvars(), n.degree());
    for k in 1..=n.degree() {
        power = power.mat_mul(n)?;
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.mat_trace().scale(&Rational::new(BigInt::from(1), BigInt::from(k)));
    }
    Ok(acc)
}
