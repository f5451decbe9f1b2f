//! Formal complex-Gaussian integration: the field-theory route to the same
//! series the reversion module computes.
//!
//! With identity covariance, `<prod phibar^a phi^b> = a!` when `a == b` and 0
//! otherwise. Every `phibar_b` is integrated by parts into `d/dphi_b`, so
//!
//! ```text
//! int dmu_I  phi^k  prod_b (phibar_b g_b(phi))^{n_b}
//!     = constant term of  d^n/dphi^n [ phi^k prod_b g_b(phi)^{n_b} ]
//! ```
//!
//! and summing `x^n / n!` times that over `|n| <= D` gives the partition
//! function and the correlators as truncated series in `x`.

mod cross_check;
mod moments;
mod phi;

pub use cross_check::{cross_check, source_monomial, CrossCheck, CrossCheckReport};
pub use moments::{
    gaussian_pairing, moment_term, normalized_moment, partition_series, unnormalized_moment, CorrelatorKind,
    CorrelatorSeries, GaussianModel,
};
pub use phi::PhiPolynomial;
