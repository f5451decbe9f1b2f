use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::PhiPolynomial;
use crate::reversion::{GSpec, ReversionError};
use crate::series::{MultiIndex, Rational, TruncatedSeries};

/// `<prod_i phibar_i^{a_i} phi_i^{b_i}>` under the identity-covariance complex
/// Gaussian: `a!` when `a == b`, else 0.
pub fn gaussian_pairing(a: &MultiIndex, b: &MultiIndex) -> Rational {
    assert_eq!(a.len(), b.len(), "pairing arity mismatch");
    if a == b {
        Rational::from_integer(a.factorial())
    } else {
        Rational::zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelatorKind {
    Unnormalized,
    Normalized,
}

/// A correlator of the source monomial `phi^k / k!`, as a series in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelatorSeries {
    pub kind: CorrelatorKind,
    pub k: MultiIndex,
    pub value: TruncatedSeries,
}

/// Caches `prod_b g_b(phi)^{n_b}` over the grid `|n| <= D` so that many
/// correlators of one spec share the expensive products.
#[derive(Clone, Debug)]
pub struct GaussianModel {
    spec: GSpec,
    products: HashMap<MultiIndex, PhiPolynomial>,
}

impl GaussianModel {
    pub fn new(spec: &GSpec) -> Self {
        let products = MultiIndex::up_to_degree(spec.nvars(), spec.degree())
            .into_iter()
            .map(|n| {
                let p = g_product(spec, &n);
                (n, p)
            })
            .collect();
        GaussianModel { spec: spec.clone(), products }
    }

    pub fn spec(&self) -> &GSpec {
        &self.spec
    }

    fn check(&self, idx: &MultiIndex) -> Result<(), ReversionError> {
        if idx.len() != self.spec.nvars() {
            return Err(ReversionError::IndexLength { got: idx.len(), expected: self.spec.nvars() });
        }
        Ok(())
    }

    /// Constant term of `d^n/dphi^n [phi^k prod_b g_b(phi)^{n_b}]`, without
    /// any `1/k!` or `1/n!` normalisation.
    pub fn moment_term(&self, k: &MultiIndex, n: &MultiIndex) -> Result<Rational, ReversionError> {
        self.check(k)?;
        self.check(n)?;
        let cap = n.degree();
        if k.degree() > cap {
            return Ok(Rational::zero());
        }
        let owned;
        let product = match self.products.get(n) {
            Some(p) => p,
            None => {
                owned = g_product(&self.spec, n);
                &owned
            }
        };
        let source = PhiPolynomial::monomial(k.clone(), Rational::from_integer(BigInt::from(1)));
        let omega = source.mul_capped(product, cap);
        Ok(omega.derive_multi(n).constant_term())
    }

    /// `Z(x) = sum_{|n|<=D} (x^n / n!) * moment_term(0, n)`.
    pub fn partition_series(&self) -> Result<TruncatedSeries, ReversionError> {
        self.moment_series(&MultiIndex::zeros(self.spec.nvars()))
    }

    fn moment_series(&self, k: &MultiIndex) -> Result<TruncatedSeries, ReversionError> {
        let (m, d) = (self.spec.nvars(), self.spec.degree());
        let k_fact = Rational::from_integer(k.factorial());
        let mut terms = Vec::new();
        for n in MultiIndex::up_to_degree(m, d) {
            let t = self.moment_term(k, &n)?;
            if !t.is_zero() {
                let c = t / (Rational::from_integer(n.factorial()) * &k_fact);
                terms.push((n, c));
            }
        }
        Ok(TruncatedSeries::from_terms(m, d, terms)?)
    }

    /// `int dmu_I (phi^k / k!) exp(phibar x g(phi))`, truncated at `D`.
    pub fn unnormalized_moment(&self, k: &MultiIndex) -> Result<CorrelatorSeries, ReversionError> {
        self.check(k)?;
        Ok(CorrelatorSeries { kind: CorrelatorKind::Unnormalized, k: k.clone(), value: self.moment_series(k)? })
    }

    /// The unnormalised correlator divided by `Z`. The `1/k!` is kept.
    pub fn normalized_moment(&self, k: &MultiIndex) -> Result<CorrelatorSeries, ReversionError> {
        let unnorm = self.unnormalized_moment(k)?;
        let z_inv = self.partition_series()?.invert_unit()?;
        Ok(CorrelatorSeries { kind: CorrelatorKind::Normalized, k: k.clone(), value: &unnorm.value * &z_inv })
    }
}

// prod_b g_b^{n_b} as a phi-polynomial, with g read to degree max(D, |n|)
// and only terms of degree <= |n| kept.
fn g_product(spec: &GSpec, n: &MultiIndex) -> PhiPolynomial {
    let cap = n.degree();
    let read = cap.max(spec.degree());
    spec.g().iter().zip(n.exponents()).fold(PhiPolynomial::one(spec.nvars()), |acc, (g, &e)| {
        acc.mul_capped(&PhiPolynomial::from_series(g, read).pow_capped(e, cap), cap)
    })
}

pub fn moment_term(k: &MultiIndex, n: &MultiIndex, spec: &GSpec) -> Result<Rational, ReversionError> {
    GaussianModel { spec: spec.clone(), products: HashMap::new() }.moment_term(k, n)
}

pub fn partition_series(spec: &GSpec) -> Result<TruncatedSeries, ReversionError> {
    GaussianModel::new(spec).partition_series()
}

pub fn unnormalized_moment(k: &MultiIndex, spec: &GSpec) -> Result<CorrelatorSeries, ReversionError> {
    GaussianModel::new(spec).unnormalized_moment(k)
}

pub fn normalized_moment(k: &MultiIndex, spec: &GSpec) -> Result<CorrelatorSeries, ReversionError> {
    GaussianModel::new(spec).normalized_moment(k)
}
