use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::{MultiIndex, Rational, TruncatedSeries};

/// A polynomial in the field components `phi_1, ..., phi_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPolynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl PhiPolynomial {
    pub fn one(nvars: usize) -> Self {
        Self::monomial(MultiIndex::zeros(nvars), Rational::from_integer(BigInt::from(1)))
    }

    pub fn monomial(exp: MultiIndex, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        PhiPolynomial { nvars, terms }
    }

    /// Reads the stored coefficients of `s` as a polynomial, dropping every
    /// term of degree above `max_degree`.
    pub fn from_series(s: &TruncatedSeries, max_degree: u32) -> Self {
        let terms = s.terms().filter(|(e, _)| e.degree() <= max_degree).map(|(e, c)| (e.clone(), c.clone())).collect();
        PhiPolynomial { nvars: s.nvars(), terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// Product, keeping only terms of degree `<= cap`.
    pub fn mul_capped(&self, other: &Self, cap: u32) -> Self {
        assert_eq!(self.nvars, other.nvars, "phi polynomial arity mismatch");
        let mut terms: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if ea.degree() + eb.degree() > cap {
                    continue;
                }
                *terms.entry(ea.add(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PhiPolynomial { nvars: self.nvars, terms }
    }

    pub fn pow_capped(&self, e: u32, cap: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| acc.mul_capped(self, cap))
    }

    /// `d/dphi_j`.
    pub fn derive(&self, j: usize) -> Self {
        let mut terms: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let p = e.get(j);
            if p == 0 {
                continue;
            }
            let mut v = e.exponents().to_vec();
            v[j] -= 1;
            terms.insert(MultiIndex::new(v), c * Rational::from_integer(BigInt::from(p)));
        }
        PhiPolynomial { nvars: self.nvars, terms }
    }

    /// `prod_j (d/dphi_j)^{n_j}`.
    pub fn derive_multi(&self, n: &MultiIndex) -> Self {
        let mut out = self.clone();
        for (j, &times) in n.exponents().iter().enumerate() {
            for _ in 0..times {
                if out.is_zero() {
                    return out;
                }
                out = out.derive(j);
            }
        }
        out
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zeros(self.nvars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::int;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn derivatives() {
        // d^2/dphi1^2 phi1^3 phi2 = 6 phi1 phi2
        let p = PhiPolynomial::monomial(mi(&[3, 1]), int(1));
        assert_eq!(p.derive_multi(&mi(&[2, 0])), PhiPolynomial::monomial(mi(&[1, 1]), int(6)));
        assert_eq!(p.derive_multi(&mi(&[3, 1])).constant_term(), int(6));
        assert!(p.derive_multi(&mi(&[0, 2])).is_zero());
    }

    #[test]
    fn capped_products() {
        let p = PhiPolynomial::one(1).mul_capped(&PhiPolynomial::monomial(mi(&[1]), int(1)), 5);
        let s = PhiPolynomial::one(1);
        let mut q = s.clone();
        q.terms.insert(mi(&[1]), int(1));
        // (1 + phi)^3 capped at 2 = 1 + 3 phi + 3 phi^2
        let cube = q.pow_capped(3, 2);
        assert_eq!(cube.coeff(&mi(&[2])), int(3));
        assert_eq!(cube.coeff(&mi(&[3])), int(0));
        assert_eq!(p.coeff(&mi(&[1])), int(1));
    }
}
