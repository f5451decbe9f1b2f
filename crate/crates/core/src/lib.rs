//! Exact multivariate power-series reversion.
//!
//! The crate solves `f_i = x_i * g_i(f_1, ..., f_m)` over truncated formal
//! power series with rational coefficients, evaluates both sides of the
//! Lagrange-Good inversion formula coefficient by coefficient, and carries a
//! second, independent route to the same quantities through formal complex
//! Gaussian integration (see [`wick`]).
//!
//! * [`series`]: rationals, multi-indices, truncated series, series matrices.
//! * [`reversion`]: the fixed-point solver, the `Gamma`/`eta` framing and the
//!   identity checks (including the MacMahon master theorem).
//! * [`wick`]: partition function and correlators via integration by parts.
//! * [`cli`]: the command-line front end and its JSON formats.

pub mod cli;
pub mod reversion;
pub mod series;
pub mod wick;

pub use reversion::{GSpec, ReversionError, ReversionProblem, VerificationCell, VerificationReport};
pub use series::{MultiIndex, Rational, SeriesError, SeriesMatrix, SeriesVector, TruncatedSeries};
