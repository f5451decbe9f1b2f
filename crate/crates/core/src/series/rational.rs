//! Exact rational coefficients.
//!
//! [`Rational`] is `num_rational::BigRational`: always reduced, positive
//! denominator, arbitrary precision. Text form is `p/q`, or `p` when the
//! denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serializer;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Small-integer convenience constructor. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optional leading `-` on `p`), with no embedded
/// whitespace. Zero denominators are rejected.
pub fn parse_rational(src: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(src.to_string());
    let (num, den) = match src.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (src, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(err());
    }
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}
