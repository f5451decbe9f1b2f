use num_traits::Zero;

use super::solve::{self, ReversionProblem};
use super::ReversionError;
use crate::series::{MultiIndex, Rational, SeriesVector, TruncatedSeries};

/// The data `g_1, ..., g_m` of a reversion problem, at working degree `D`.
///
/// `g` is read as exact up to degree `D`; coefficients above `D` are taken
/// to be zero. No constraint is placed on the constant terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSpec {
    g: SeriesVector,
}

impl GSpec {
    pub fn new(g: SeriesVector) -> Result<Self, ReversionError> {
        let m = g.len();
        if m == 0 || g.get(0).nvars() != m {
            let nvars = g.iter().next().map_or(0, TruncatedSeries::nvars);
            return Err(ReversionError::SpecLength { got: m, expected: nvars });
        }
        Ok(GSpec { g })
    }

    pub fn from_series(g: Vec<TruncatedSeries>) -> Result<Self, ReversionError> {
        Self::new(SeriesVector::new(g)?)
    }

    pub fn nvars(&self) -> usize {
        self.g.len()
    }

    pub fn degree(&self) -> u32 {
        self.g.get(0).degree()
    }

    pub fn g(&self) -> &SeriesVector {
        &self.g
    }

    fn check_var(&self, i: usize) -> Result<(), ReversionError> {
        if i >= self.nvars() {
            return Err(ReversionError::IndexOutOfRange { index: i, m: self.nvars() });
        }
        Ok(())
    }

    /// `w^[d]_{i, alpha_1 ... alpha_d}`, the fully symmetric Taylor tensor of
    /// `g_i`: `e! * [x^e] g_i` where `e` counts the occurrences in `alphas`.
    pub fn symmetric_tensor(&self, i: usize, alphas: &[usize]) -> Result<Rational, ReversionError> {
        self.check_var(i)?;
        if alphas.len() > self.degree() as usize {
            return Err(ReversionError::TensorOrder { order: alphas.len(), degree: self.degree() });
        }
        let e = MultiIndex::from_occurrences(self.nvars(), alphas).ok_or_else(|| {
            let bad = alphas.iter().copied().find(|&a| a >= self.nvars()).unwrap_or_default();
            ReversionError::IndexOutOfRange { index: bad, m: self.nvars() }
        })?;
        Ok(self.g.get(i).coeff_factorial(&e)?)
    }

    /// `w^[0]_i = g_i(0)`.
    pub fn constant_terms(&self) -> Vec<Rational> {
        self.g.iter().map(TruncatedSeries::constant_term).collect()
    }

    /// `eta^[d]_{i, alphas}` as a series in `x`: `delta_{i alpha} - x_i w^[1]`
    /// for `d = 1`, `-x_i w^[d]` for `d >= 2`.
    pub fn gamma_tensor(&self, i: usize, alphas: &[usize]) -> Result<TruncatedSeries, ReversionError> {
        if alphas.is_empty() {
            return Err(ReversionError::ZeroOrderGamma);
        }
        let w = self.symmetric_tensor(i, alphas)?;
        let (m, d) = (self.nvars(), self.degree());
        let mut eta = TruncatedSeries::constant(m, d, w).mul_variable(i)?;
        eta = -&eta;
        if alphas.len() == 1 && alphas[0] == i {
            eta = &eta + &TruncatedSeries::one(m, d);
        }
        Ok(eta)
    }

    /// `y_i = x_i * w^[0]_i`.
    pub fn source(&self) -> SeriesVector {
        let (m, d) = (self.nvars(), self.degree());
        let entries = self
            .constant_terms()
            .into_iter()
            .enumerate()
            .map(|(i, w0)| TruncatedSeries::constant(m, d, w0).mul_variable(i).expect("i < m"))
            .collect();
        SeriesVector::new(entries).expect("uniform shape")
    }

    /// `Gamma_i(h) = h_i - x_i g_i(h) + x_i w^[0]_i`.
    pub fn gamma_apply(&self, h: &SeriesVector) -> Result<SeriesVector, ReversionError> {
        if h.len() != self.nvars() {
            return Err(ReversionError::SpecLength { got: h.len(), expected: self.nvars() });
        }
        let y = self.source();
        let mut out = Vec::with_capacity(self.nvars());
        for (i, g_i) in self.g.iter().enumerate() {
            let x_g = g_i.compose(h)?.mul_variable(i)?;
            out.push(&(h.get(i) - &x_g) + y.get(i));
        }
        Ok(SeriesVector::new(out)?)
    }

    /// Solves `f_i = x_i g_i(f)`; see [`ReversionProblem`].
    pub fn solve(&self) -> Result<ReversionProblem, ReversionError> {
        solve::solve_fixed_point(self)
    }

    /// Whether every `g_i` vanishes at the origin.
    pub fn is_degenerate(&self) -> bool {
        self.constant_terms().iter().all(Zero::is_zero)
    }
}
