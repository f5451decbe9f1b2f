//! JSON input specs.
//!
//! ```json
//! {"m": 2, "degree": 5,
//!  "g": [[{"exp": [0, 0], "coeff": "1"}, {"exp": [1, 1], "coeff": "-1/2"}],
//!        "inv(1 - x1)"]}
//! ```
//!
//! Each `g` entry is either a term list or an expression string. The
//! canonical form is all term lists, graded-lex ordered, reduced fractions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{parse_expression, EvalError, ParseError};
use crate::reversion::GSpec;
use crate::series::rational::{parse_rational, ParseRationalError};
use crate::series::{MultiIndex, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub m: usize,
    pub degree: u32,
    pub g: Vec<SeriesDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesDesc {
    Expression(String),
    Terms(Vec<TermDesc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDesc {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid input JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("m must be at least 1")]
    NoVariables,
    #[error("expected {expected} entries in g, got {got}")]
    EntryCount { got: usize, expected: usize },
    #[error("g{entry}: exponent {exp:?} has length {got}, expected {expected}")]
    ExponentLength { entry: usize, exp: Vec<u32>, got: usize, expected: usize },
    #[error("g{entry}: exponent {exp:?} has total degree above {degree}")]
    ExponentDegree { entry: usize, exp: Vec<u32>, degree: u32 },
    #[error("g{entry}: exponent {exp:?} appears twice")]
    DuplicateExponent { entry: usize, exp: Vec<u32> },
    #[error("g{entry}: {source}")]
    Coefficient { entry: usize, source: ParseRationalError },
    #[error("g{entry}: {source}")]
    Parse { entry: usize, source: ParseError },
    #[error("g{entry}: {source}")]
    Eval { entry: usize, source: EvalError },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl InputSpec {
    pub fn from_json(src: &str) -> Result<Self, InputError> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("input spec serializes")
    }

    /// Validates the entries and evaluates them at `(m, degree)`.
    pub fn to_series(&self) -> Result<Vec<TruncatedSeries>, InputError> {
        if self.m == 0 {
            return Err(InputError::NoVariables);
        }
        if self.g.len() != self.m {
            return Err(InputError::EntryCount { got: self.g.len(), expected: self.m });
        }
        self.g.iter().enumerate().map(|(idx, desc)| desc.evaluate(idx + 1, self.m, self.degree)).collect()
    }

    pub fn to_gspec(&self) -> Result<GSpec, InputError> {
        let series = self.to_series()?;
        GSpec::from_series(series).map_err(|e| match e {
            crate::reversion::ReversionError::Series(s) => InputError::Series(s),
            _ => InputError::EntryCount { got: self.g.len(), expected: self.m },
        })
    }

    pub fn from_series(m: usize, degree: u32, g: &[TruncatedSeries]) -> Self {
        InputSpec { m, degree, g: g.iter().map(|s| SeriesDesc::Terms(series_terms(s))).collect() }
    }

    pub fn canonical(&self) -> Result<Self, InputError> {
        Ok(Self::from_series(self.m, self.degree, &self.to_series()?))
    }
}

impl SeriesDesc {
    fn evaluate(&self, entry: usize, m: usize, degree: u32) -> Result<TruncatedSeries, InputError> {
        match self {
            SeriesDesc::Expression(src) => {
                let ast = parse_expression(src, m).map_err(|source| InputError::Parse { entry, source })?;
                ast.eval(m, degree).map_err(|source| InputError::Eval { entry, source })
            }
            SeriesDesc::Terms(terms) => {
                let mut seen = BTreeSet::new();
                let mut parsed = Vec::with_capacity(terms.len());
                for t in terms {
                    if t.exp.len() != m {
                        return Err(InputError::ExponentLength {
                            entry,
                            exp: t.exp.clone(),
                            got: t.exp.len(),
                            expected: m,
                        });
                    }
                    if t.exp.iter().sum::<u32>() > degree {
                        return Err(InputError::ExponentDegree { entry, exp: t.exp.clone(), degree });
                    }
                    if !seen.insert(t.exp.clone()) {
                        return Err(InputError::DuplicateExponent { entry, exp: t.exp.clone() });
                    }
                    let c = parse_rational(&t.coeff).map_err(|source| InputError::Coefficient { entry, source })?;
                    parsed.push((MultiIndex::new(t.exp.clone()), c));
                }
                Ok(TruncatedSeries::from_terms(m, degree, parsed)?)
            }
        }
    }
}

/// Nonzero terms of `s` in graded-lex order.
pub fn series_terms(s: &TruncatedSeries) -> Vec<TermDesc> {
    s.terms().map(|(e, c)| TermDesc { exp: e.exponents().to_vec(), coeff: c.to_string() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_entries_parse() {
        let src = r#"{"m": 2, "degree": 3, "g": [[{"exp": [0, 0], "coeff": "2/4"}, {"exp": [1, 1], "coeff": "-1"}], "inv(1 - x1)"]}"#;
        let spec = InputSpec::from_json(src).unwrap();
        let series = spec.to_series().unwrap();
        assert_eq!(series[0].to_string(), "1/2 - x1*x2");
        assert_eq!(series[1].to_string(), "1 + x1 + x1^2 + x1^3");
    }

    #[test]
    fn canonical_form() {
        let src = r#"{"m": 1, "degree": 2, "g": ["(1 + x1)^2"]}"#;
        let canon = InputSpec::from_json(src).unwrap().canonical().unwrap();
        assert_eq!(
            serde_json::to_string(&canon).unwrap(),
            r#"{"m":1,"degree":2,"g":[[{"exp":[0],"coeff":"1"},{"exp":[1],"coeff":"2"},{"exp":[2],"coeff":"1"}]]}"#
        );
        assert_eq!(canon.canonical().unwrap(), canon);
    }

    #[test]
    fn validation_errors() {
        let cases = [
            (r#"{"m": 0, "degree": 2, "g": []}"#, "at least 1"),
            (r#"{"m": 2, "degree": 2, "g": ["1"]}"#, "expected 2 entries"),
            (r#"{"m": 1, "degree": 2, "g": [[{"exp": [1, 0], "coeff": "1"}]]}"#, "length"),
            (r#"{"m": 1, "degree": 2, "g": [[{"exp": [3], "coeff": "1"}]]}"#, "total degree"),
            (r#"{"m": 1, "degree": 2, "g": [[{"exp": [1], "coeff": "1"}, {"exp": [1], "coeff": "2"}]]}"#, "twice"),
            (r#"{"m": 1, "degree": 2, "g": [[{"exp": [1], "coeff": "1/0"}]]}"#, "invalid rational"),
            (r#"{"m": 1, "degree": 2, "g": ["x2"]}"#, "out of range"),
            (r#"{"m": 1, "degree": 2, "g": ["inv(x1)"]}"#, "zero constant"),
        ];
        for (src, needle) in cases {
            let err = InputSpec::from_json(src).unwrap().to_gspec().unwrap_err().to_string();
            assert!(err.contains(needle), "{src}: {err}");
        }
        assert!(InputSpec::from_json(r#"{"m": 1, "degree": 2, "g": ["1"], "extra": 1}"#).is_err());
        assert!(InputSpec::from_json(r#"{"m": 1, "degree": 2, "g": [[{"exp": [0], "coeff": 1}]]}"#).is_err());
    }
}
