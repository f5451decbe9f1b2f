//! Truncated multivariate formal power series over the rationals.
//!
//! Every series carries its variable count `m` and a total-degree bound `D`;
//! coefficients of monomials with `|n| > D` are never stored. Binary
//! operations require both operands to agree on `(m, D)`.

mod error;
mod matrix;
mod multi_index;
pub mod rational;
mod truncated;
mod vector;

pub use error::SeriesError;
pub use matrix::{SeriesMatrix, DEFAULT_DET_LIMIT};
pub use multi_index::MultiIndex;
pub use rational::Rational;
pub use truncated::TruncatedSeries;
pub use vector::SeriesVector;
