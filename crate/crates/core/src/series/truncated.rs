use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{factorial, Rational};
use super::{MultiIndex, SeriesError, SeriesVector};

/// A formal power series in `x_1, ..., x_m` truncated at total degree `D`.
///
/// Invariants:
/// - every stored key has length `m` and total degree `<= D`
/// - no stored coefficient is zero, so derived equality is coefficient-wise
///
/// The std operator impls (`+`, `-`, `*` on references) panic on a shape
/// mismatch; the `try_*` methods report it instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        TruncatedSeries { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, degree: u32) -> Self {
        Self::constant(nvars, degree, Rational::one())
    }

    pub fn constant(nvars: usize, degree: u32, c: Rational) -> Self {
        let mut s = Self::zero(nvars, degree);
        s.add_term(MultiIndex::zeros(nvars), c);
        s
    }

    /// The variable `x_j` (0-based `j`).
    pub fn variable(nvars: usize, degree: u32, j: usize) -> Result<Self, SeriesError> {
        if j >= nvars {
            return Err(SeriesError::VariableOutOfRange { index: j, nvars });
        }
        Ok(Self::monomial(nvars, degree, MultiIndex::unit(nvars, j), Rational::one()))
    }

    /// `c * x^exp`, or zero when `|exp| > degree`.
    pub fn monomial(nvars: usize, degree: u32, exp: MultiIndex, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars, "monomial exponent length");
        let mut s = Self::zero(nvars, degree);
        s.add_term(exp, c);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed and terms above the truncation degree are dropped.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut s = Self::zero(nvars, degree);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(SeriesError::IndexLength { got: exp.len(), expected: nvars });
            }
            s.add_term(exp, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&MultiIndex::zeros(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    fn add_term(&mut self, exp: MultiIndex, c: Rational) {
        if exp.degree() > self.degree || c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), SeriesError> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(SeriesError::ShapeMismatch {
                left_vars: self.nvars,
                left_degree: self.degree,
                right_vars: other.nvars,
                right_degree: other.degree,
            });
        }
        Ok(())
    }

    fn check_index(&self, n: &MultiIndex) -> Result<(), SeriesError> {
        if n.len() != self.nvars {
            return Err(SeriesError::IndexLength { got: n.len(), expected: self.nvars });
        }
        if n.degree() > self.degree {
            return Err(SeriesError::DegreeOutOfRange { got: n.degree(), max: self.degree });
        }
        Ok(())
    }

    /// Same coefficients under a different truncation degree. Lowering drops
    /// terms; raising treats the missing higher coefficients as zero.
    pub fn with_degree(&self, degree: u32) -> Self {
        let terms =
            self.terms.iter().filter(|(e, _)| e.degree() <= degree).map(|(e, c)| (e.clone(), c.clone())).collect();
        TruncatedSeries { nvars: self.nvars, degree, terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Cauchy product, discarding every term of total degree above `D`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let room = self.degree - ea.degree();
            // keys iterate by ascending degree
            for (eb, cb) in other.terms.iter().take_while(|(eb, _)| eb.degree() <= room) {
                *acc.entry(ea.add(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries { nvars: self.nvars, degree: self.degree, terms: acc })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        TruncatedSeries { nvars: self.nvars, degree: self.degree, terms }
    }

    /// `x_j * self`, truncated.
    pub fn mul_variable(&self, j: usize) -> Result<Self, SeriesError> {
        if j >= self.nvars {
            return Err(SeriesError::VariableOutOfRange { index: j, nvars: self.nvars });
        }
        let shift = MultiIndex::unit(self.nvars, j);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.degree() < self.degree)
            .map(|(e, c)| (e.add(&shift), c.clone()))
            .collect();
        Ok(TruncatedSeries { nvars: self.nvars, degree: self.degree, terms })
    }

    /// `self^e` by repeated squaring; `pow(0)` is 1.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(self.nvars, self.degree);
        if e > self.degree && self.constant_term().is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative in `x_j` (0-based).
    ///
    /// The result keeps degree `D`, but its degree-`D` coefficients would need
    /// the input at degree `D + 1`: it is only trustworthy to degree `D - 1`
    /// unless the input is exact beyond its truncation (e.g. a polynomial).
    pub fn derive(&self, j: usize) -> Result<Self, SeriesError> {
        if j >= self.nvars {
            return Err(SeriesError::VariableOutOfRange { index: j, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let p = e.get(j);
            if p == 0 {
                continue;
            }
            let mut v = e.exponents().to_vec();
            v[j] -= 1;
            out.add_term(MultiIndex::new(v), c * Rational::from_integer(BigInt::from(p)));
        }
        Ok(out)
    }

    /// Substitutes `inner[j]` for `x_j`. Every inner series needs a zero
    /// constant term so each output degree receives finitely many terms.
    pub fn compose(&self, inner: &SeriesVector) -> Result<Self, SeriesError> {
        if inner.len() != self.nvars {
            return Err(SeriesError::LengthMismatch { got: inner.len(), expected: self.nvars });
        }
        for s in inner.iter() {
            self.check_shape(s)?;
            if !s.constant_term().is_zero() {
                return Err(SeriesError::NonZeroConstantTerm);
            }
        }
        // powers[j][p] = inner_j^p
        let mut powers: Vec<Vec<Self>> =
            inner.iter().map(|s| vec![Self::one(self.nvars, self.degree), s.clone()]).collect();
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.nvars, self.degree, c.clone());
            for (j, &p) in e.exponents().iter().enumerate() {
                let pw = &mut powers[j];
                while pw.len() <= p as usize {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                if p > 0 {
                    term = &term * &pw[p as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Multiplicative inverse, from `(1/c) * sum_{k<=D} (1 - a/c)^k` where `c`
    /// is the constant term.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let c_inv = c.recip();
        let u = &Self::one(self.nvars, self.degree) - &self.scale(&c_inv);
        let mut acc = Self::one(self.nvars, self.degree);
        let mut power = acc.clone();
        for _ in 0..self.degree {
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c_inv))
    }

    /// `sum_{k<=D} a^k / k!` for `a` with zero constant term.
    pub fn exp_series(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let mut acc = Self::one(self.nvars, self.degree);
        let mut power = acc.clone();
        for k in 1..=self.degree {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&Rational::from_integer(factorial(k)).recip());
        }
        Ok(acc)
    }

    /// `-sum_{k<=D} (1 - a)^k / k` for `a` with constant term 1.
    pub fn log_series(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(SeriesError::ConstantTermNotOne(c.to_string()));
        }
        let u = &Self::one(self.nvars, self.degree) - self;
        let mut acc = Self::zero(self.nvars, self.degree);
        let mut power = Self::one(self.nvars, self.degree);
        for k in 1..=self.degree {
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            acc = &acc - &power.scale(&Rational::from_integer(BigInt::from(k)).recip());
        }
        Ok(acc)
    }

    /// Raw coefficient `[x^n] self`.
    pub fn coeff(&self, n: &MultiIndex) -> Result<Rational, SeriesError> {
        self.check_index(n)?;
        Ok(self.terms.get(n).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `prod_i x_i^{n_i} / n_i!`, i.e. `n! * [x^n] self`.
    pub fn coeff_factorial(&self, n: &MultiIndex) -> Result<Rational, SeriesError> {
        Ok(self.coeff(n)? * Rational::from_integer(n.factorial()))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("series shape mismatch in +")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_sub(rhs).expect("series shape mismatch in -")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series shape mismatch in *")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for TruncatedSeries {
    /// Human form such as `1 + 3*x1*x2 - 1/2*x1^2`; `0` for the zero series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| if p == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    fn x(nvars: usize, degree: u32, j: usize) -> TruncatedSeries {
        TruncatedSeries::variable(nvars, degree, j).unwrap()
    }

    fn one(nvars: usize, degree: u32) -> TruncatedSeries {
        TruncatedSeries::one(nvars, degree)
    }

    fn mono(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn add_examples() {
        let x1 = x(1, 4, 0);
        assert_eq!(&(&one(1, 4) + &x1) + &-&x1, one(1, 4));
        let s = &one(1, 4) + &x1;
        assert_eq!(&s + &TruncatedSeries::zero(1, 4), s);
        let sum = &x1.scale(&rat(1, 2)) + &x1.scale(&rat(1, 3));
        assert_eq!(sum, x1.scale(&rat(5, 6)));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = one(1, 3);
        let b = one(2, 3);
        let c = one(1, 4);
        assert!(matches!(a.try_add(&b), Err(SeriesError::ShapeMismatch { .. })));
        assert!(matches!(a.try_mul(&c), Err(SeriesError::ShapeMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let x1 = x(1, 4, 0);
        let p = &(&one(1, 4) + &x1) * &(&one(1, 4) - &x1);
        assert_eq!(p, &one(1, 4) - &x1.pow(2));

        let x1 = x(1, 2, 0);
        let a = &(&one(1, 2) + &x1) + &x1.pow(2);
        let b = &one(1, 2) + &x1;
        let expected =
            TruncatedSeries::from_terms(1, 2, [(mono(&[0]), int(1)), (mono(&[1]), int(2)), (mono(&[2]), int(2))])
                .unwrap();
        assert_eq!(&a * &b, expected);

        let prod = &x(2, 3, 0) * &x(2, 3, 1);
        assert_eq!(prod, TruncatedSeries::monomial(2, 3, mono(&[1, 1]), int(1)));
    }

    #[test]
    fn pow_examples() {
        let x1 = x(1, 3, 0);
        let s = &one(1, 3) + &x1;
        let expected =
            TruncatedSeries::from_terms(1, 3, [(mono(&[0]), int(1)), (mono(&[1]), int(2)), (mono(&[2]), int(1))])
                .unwrap();
        assert_eq!(s.pow(2), expected);
        assert_eq!(s.pow(0), one(1, 3));
        assert!(x1.pow(4).is_zero());
    }

    #[test]
    fn derive_examples() {
        let s = TruncatedSeries::monomial(2, 4, mono(&[2, 1]), int(1));
        assert_eq!(s.derive(0).unwrap(), TruncatedSeries::monomial(2, 4, mono(&[1, 1]), int(2)));
        assert!(x(2, 4, 0).derive(1).unwrap().is_zero());
        let t =
            TruncatedSeries::from_terms(1, 3, [(mono(&[0]), int(1)), (mono(&[1]), int(3)), (mono(&[2]), rat(1, 2))])
                .unwrap();
        assert_eq!(t.derive(0).unwrap(), &TruncatedSeries::constant(1, 3, int(3)) + &x(1, 3, 0));
        assert!(matches!(t.derive(1), Err(SeriesError::VariableOutOfRange { .. })));
    }

    #[test]
    fn compose_examples() {
        let x1 = x(1, 4, 0);
        let outer = &one(1, 4) + &x1;
        let inner = SeriesVector::new(vec![x1.pow(2)]).unwrap();
        assert_eq!(outer.compose(&inner).unwrap(), &one(1, 4) + &x1.pow(2));

        let s = TruncatedSeries::from_terms(
            2,
            3,
            [(mono(&[0, 0]), rat(2, 3)), (mono(&[1, 2]), int(-1)), (mono(&[2, 0]), int(5))],
        )
        .unwrap();
        let ident = SeriesVector::variables(2, 3);
        assert_eq!(s.compose(&ident).unwrap(), s);

        let xy = &x(2, 3, 0) * &x(2, 3, 1);
        let swap = SeriesVector::new(vec![x(2, 3, 1), x(2, 3, 0)]).unwrap();
        assert_eq!(xy.compose(&swap).unwrap(), xy);
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let inner = SeriesVector::new(vec![&one(1, 3) + &x(1, 3, 0)]).unwrap();
        assert_eq!(x(1, 3, 0).compose(&inner), Err(SeriesError::NonZeroConstantTerm));
    }

    #[test]
    fn invert_unit_examples() {
        let d = 5;
        let x1 = x(1, d, 0);
        let geo = (0..=d).fold(TruncatedSeries::zero(1, d), |acc, k| &acc + &x1.pow(k));
        assert_eq!((&one(1, d) - &x1).invert_unit().unwrap(), geo);
        assert_eq!(one(1, d).invert_unit().unwrap(), one(1, d));
        let two = TruncatedSeries::constant(1, d, int(2));
        assert_eq!(two.invert_unit().unwrap(), TruncatedSeries::constant(1, d, rat(1, 2)));
        assert_eq!(x1.invert_unit(), Err(SeriesError::NotAUnit));
    }

    #[test]
    fn exp_examples() {
        let x1 = x(1, 3, 0);
        let expected = TruncatedSeries::from_terms(
            1,
            3,
            [(mono(&[0]), int(1)), (mono(&[1]), int(1)), (mono(&[2]), rat(1, 2)), (mono(&[3]), rat(1, 6))],
        )
        .unwrap();
        assert_eq!(x1.exp_series().unwrap(), expected);
        assert_eq!(TruncatedSeries::zero(2, 3).exp_series().unwrap(), one(2, 3));
        let s = &x(2, 2, 0) + &x(2, 2, 1);
        let expected = &(&one(2, 2) + &s) + &s.pow(2).scale(&rat(1, 2));
        assert_eq!(s.exp_series().unwrap(), expected);
        assert_eq!(one(1, 3).exp_series(), Err(SeriesError::NonZeroConstantTerm));
    }

    #[test]
    fn log_examples() {
        assert!(one(1, 4).log_series().unwrap().is_zero());
        let d = 5;
        let x1 = x(1, d, 0);
        let log = (&one(1, d) - &x1).log_series().unwrap();
        let expected = (1..=d).fold(TruncatedSeries::zero(1, d), |acc, k| &acc - &x1.pow(k).scale(&rat(1, k as i64)));
        assert_eq!(log, expected);
        assert_eq!(log.exp_series().unwrap(), &one(1, d) - &x1);

        let b = &x(2, d, 0) + &x(2, d, 1).pow(2);
        assert_eq!(b.exp_series().unwrap().log_series().unwrap(), b);
        assert!(matches!(x1.log_series(), Err(SeriesError::ConstantTermNotOne(_))));
    }

    #[test]
    fn coeff_lookup() {
        let s = &one(2, 3) + &(&x(2, 3, 0) * &x(2, 3, 1)).scale(&int(3));
        assert_eq!(s.coeff(&mono(&[1, 1])).unwrap(), int(3));
        assert_eq!(s.coeff(&mono(&[0, 2])).unwrap(), int(0));
        assert_eq!(x(1, 3, 0).pow(2).coeff(&mono(&[2])).unwrap(), int(1));
        assert!(matches!(s.coeff(&mono(&[2, 2])), Err(SeriesError::DegreeOutOfRange { .. })));
        assert!(matches!(s.coeff(&mono(&[1])), Err(SeriesError::IndexLength { .. })));
    }

    #[test]
    fn coeff_factorial_lookup() {
        assert_eq!(x(1, 3, 0).pow(2).coeff_factorial(&mono(&[2])).unwrap(), int(2));
        let xy = &x(2, 3, 0) * &x(2, 3, 1);
        assert_eq!(xy.coeff_factorial(&mono(&[1, 1])).unwrap(), int(1));
        let s = x(1, 3, 0).pow(3).scale(&int(6));
        assert_eq!(s.coeff_factorial(&mono(&[3])).unwrap(), int(36));
    }

    #[test]
    fn display_form() {
        let s = TruncatedSeries::from_terms(
            2,
            3,
            [(mono(&[0, 0]), int(1)), (mono(&[1, 1]), int(3)), (mono(&[2, 0]), rat(-1, 2))],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 - 1/2*x1^2 + 3*x1*x2");
        assert_eq!(TruncatedSeries::zero(1, 2).to_string(), "0");
    }

    #[test]
    fn mul_variable_truncates() {
        let s = x(1, 2, 0).pow(2);
        assert!(s.mul_variable(0).unwrap().is_zero());
        assert_eq!(x(2, 2, 0).mul_variable(1).unwrap(), TruncatedSeries::monomial(2, 2, mono(&[1, 1]), int(1)));
    }
}
