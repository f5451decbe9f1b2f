//! Series expressions such as `inv(1 - x1)` or `1 + (1/3)*x1*x2^2`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' uint)?
//! atom    := rational | var | '(' expr ')' | 'inv(' expr ')' | 'exp(' expr ')'
//! ```
//!
//! A rational literal `p/q` is a single token (no spaces), so `x2^2/3` is a
//! syntax error; write `(1/3)*x2^2`. Precedence: `^` > unary `-` > `*` > `+ -`.

use std::fmt;

use thiserror::Error;

use crate::series::rational::parse_rational;
use crate::series::{Rational, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    /// 0-based variable index.
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>),
    Exp(Box<Expr>),
}

/// Syntax error; `column` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("inv() argument has zero constant term")]
    InvNotUnit,
    #[error("exp() argument has nonzero constant term")]
    ExpNotNilpotent,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Var(usize),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number {s}"),
            Tok::Var(i) => write!(f, "variable x{}", i + 1),
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn err(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError { column: pos + 1, message: message.into() }
}

fn lex(src: &str, m: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == den_start {
                        return Err(err(den_start, "expected denominator digits after '/'"));
                    }
                }
                out.push((Tok::Num(src[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &src[start..i];
                let tok = match word.strip_prefix('x') {
                    Some(digits) if !digits.is_empty() && digits.bytes().all(|d| d.is_ascii_digit()) => {
                        let idx: usize = digits.parse().map_err(|_| err(start, format!("unknown variable {word}")))?;
                        if idx == 0 {
                            return Err(err(start, format!("unknown variable {word}; variables are x1..x{m}")));
                        }
                        if idx > m {
                            return Err(err(start, format!("variable {word} out of range for m = {m}")));
                        }
                        Tok::Var(idx - 1)
                    }
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, start));
                continue;
            }
            b'/' => return Err(err(i, "'/' is only allowed inside a rational literal like 1/3")),
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.offset(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(s) if !s.contains('/') => {
                let e: u32 = s.parse().map_err(|_| err(at, format!("exponent {s} is too large")))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            other => Err(err(at, format!("exponent must be a nonnegative integer, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(s) => parse_rational(&s).map(Expr::Const).map_err(|e| err(at, e.to_string())),
            Tok::Var(i) => Ok(Expr::Var(i)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "inv" || name == "exp" => {
                self.expect(Tok::LParen)?;
                let inner = Box::new(self.expr()?);
                self.expect(Tok::RParen)?;
                Ok(if name == "inv" { Expr::Inv(inner) } else { Expr::Exp(inner) })
            }
            Tok::Ident(name) => Err(err(at, format!("unknown identifier {name}"))),
            other => Err(err(at, format!("unexpected {other}"))),
        }
    }
}

/// Parses `src` over variables `x1..xm`.
pub fn parse_expression(src: &str, m: usize) -> Result<Expr, ParseError> {
    let toks = lex(src, m)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(err(p.offset(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates to a series in `nvars` variables truncated at `degree`.
    pub fn eval(&self, nvars: usize, degree: u32) -> Result<TruncatedSeries, EvalError> {
        Ok(match self {
            Expr::Const(c) => TruncatedSeries::constant(nvars, degree, c.clone()),
            Expr::Var(j) => TruncatedSeries::variable(nvars, degree, *j)?,
            Expr::Add(a, b) => &a.eval(nvars, degree)? + &b.eval(nvars, degree)?,
            Expr::Sub(a, b) => &a.eval(nvars, degree)? - &b.eval(nvars, degree)?,
            Expr::Mul(a, b) => &a.eval(nvars, degree)? * &b.eval(nvars, degree)?,
            Expr::Neg(a) => -&a.eval(nvars, degree)?,
            Expr::Pow(a, e) => a.eval(nvars, degree)?.pow(*e),
            Expr::Inv(a) => a.eval(nvars, degree)?.invert_unit().map_err(|_| EvalError::InvNotUnit)?,
            Expr::Exp(a) => a.eval(nvars, degree)?.exp_series().map_err(|_| EvalError::ExpNotNilpotent)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};
    use crate::series::MultiIndex;

    fn eval(src: &str, m: usize, d: u32) -> TruncatedSeries {
        parse_expression(src, m).unwrap().eval(m, d).unwrap()
    }

    fn x(m: usize, d: u32, j: usize) -> TruncatedSeries {
        TruncatedSeries::variable(m, d, j).unwrap()
    }

    #[test]
    fn bare_division_is_rejected() {
        let e = parse_expression("1 + x1*x2^2/3", 2).unwrap_err();
        assert!(e.message.contains("exponent"), "{e}");
        let s = eval("1 + (1/3)*x1*x2^2", 2, 3);
        let expected = TruncatedSeries::from_terms(
            2,
            3,
            [(MultiIndex::zeros(2), int(1)), (MultiIndex::new(vec![1, 2]), rat(1, 3))],
        )
        .unwrap();
        assert_eq!(s, expected);
        assert!(parse_expression("x1 / 3", 1).is_err());
    }

    #[test]
    fn builtins_match_series_ops() {
        let d = 5;
        let geo = (&TruncatedSeries::one(1, d) - &x(1, d, 0)).invert_unit().unwrap();
        assert_eq!(eval("inv(1 - x1)", 1, d), geo);
        assert_eq!(eval("exp(x1)", 1, 3), x(1, 3, 0).exp_series().unwrap());
    }

    #[test]
    fn precedence() {
        let d = 4;
        // -x1^2 is -(x1^2)
        assert_eq!(eval("-x1^2", 1, d), -&x(1, d, 0).pow(2));
        assert_eq!(eval("(-x1)^2", 1, d), x(1, d, 0).pow(2));
        assert_eq!(eval("2*-x1", 1, d), x(1, d, 0).scale(&int(-2)));
        assert_eq!(eval("1 - x1 - x1", 1, d), &TruncatedSeries::one(1, d) - &x(1, d, 0).scale(&int(2)));
        assert_eq!(eval("2 * x1 + 3 * x1", 1, d), x(1, d, 0).scale(&int(5)));
        assert_eq!(eval(" ( 1+x1 ) ^ 2 ", 1, d), (&TruncatedSeries::one(1, d) + &x(1, d, 0)).pow(2));
    }

    #[test]
    fn error_positions() {
        let e = parse_expression("1 + y", 1).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_expression("x3", 2).unwrap_err();
        assert!(e.message.contains("out of range"));
        assert!(parse_expression("x0", 2).is_err());
        assert!(parse_expression("(1 + x1", 1).is_err());
        assert!(parse_expression("1 +", 1).is_err());
        assert!(parse_expression("x1 x1", 1).is_err());
        assert!(parse_expression("x1^-1", 1).is_err());
        assert!(parse_expression("1/0", 1).is_err());
        assert!(parse_expression("", 1).is_err());
    }

    #[test]
    fn evaluation_errors() {
        let e = parse_expression("inv(x1)", 1).unwrap().eval(1, 3);
        assert_eq!(e, Err(EvalError::InvNotUnit));
        let e = parse_expression("exp(1 + x1)", 1).unwrap().eval(1, 3);
        assert_eq!(e, Err(EvalError::ExpNotNilpotent));
    }
}
