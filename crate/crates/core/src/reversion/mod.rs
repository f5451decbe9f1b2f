//! The reversion problem `f_i = x_i * g_i(f)` and the Lagrange-Good identity.
//!
//! Indices in this API are 0-based: variable `x_1` is index 0.
//!
//! [`GSpec`] holds the data `g_1, ..., g_m`; [`GSpec::solve`] produces a
//! [`ReversionProblem`] whose `f` is certified to the working degree `D`. Both
//! sides of the identity are available per coefficient ([`lhs_coeff`],
//! [`rhs_coeff`]) and as a full sweep ([`verify_theorem`]). The quadratic /
//! interaction split of `Gamma` lives in [`field`].

pub mod field;
mod identity;
mod solve;
mod spec;

use thiserror::Error;

use crate::series::SeriesError;

pub use identity::{
    lhs_coeff, linear_spec, macmahon_check, macmahon_sweep, rhs_coeff, verify_theorem, VerificationCell,
    VerificationReport,
};
pub use solve::ReversionProblem;
pub use spec::GSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReversionError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("index {index} out of range for {m} variables")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("tensor order {order} exceeds working degree {degree}")]
    TensorOrder { order: usize, degree: u32 },
    #[error("Gamma has no order-0 tensor")]
    ZeroOrderGamma,
    #[error("g must have exactly m = {expected} entries in {expected} variables, got {got}")]
    SpecLength { got: usize, expected: usize },
    #[error("requested degree {got} exceeds working degree {max}")]
    DegreeOutOfRange { got: u32, max: u32 },
    #[error("multi-index has length {got}, expected {expected}")]
    IndexLength { got: usize, expected: usize },
}
