use super::{GSpec, ReversionError};
use crate::series::{SeriesMatrix, SeriesVector, TruncatedSeries};

/// A solved reversion problem: the unique `f` with zero constant terms and
/// `f_i = x_i g_i(f)` up to degree `D`, plus the sources `y_i = x_i w^[0]_i`.
#[derive(Clone, Debug)]
pub struct ReversionProblem {
    spec: GSpec,
    f: SeriesVector,
    y: SeriesVector,
}

impl ReversionProblem {
    pub fn spec(&self) -> &GSpec {
        &self.spec
    }

    pub fn f(&self) -> &SeriesVector {
        &self.f
    }

    pub fn y(&self) -> &SeriesVector {
        &self.y
    }

    /// `g_ij(at) = (d g_i / d x_j)(at)`; see [`jacobian`].
    pub fn jacobian(&self) -> Result<SeriesMatrix, ReversionError> {
        jacobian(&self.spec, &self.f)
    }

    /// `delta_ij - x_i g_ij(f)`. Its determinant has constant term 1.
    pub fn lg_matrix(&self) -> Result<SeriesMatrix, ReversionError> {
        Ok(SeriesMatrix::identity(self.f.len(), self.spec.nvars(), self.spec.degree())
            .mat_sub(&self.jacobian()?.diag_x_mul()?)?)
    }

    /// `1 / det(delta_ij - x_i g_ij(f))`.
    pub fn inverse_determinant(&self) -> Result<TruncatedSeries, ReversionError> {
        Ok(self.lg_matrix()?.det()?.invert_unit()?)
    }
}

/// Iterates `f <- x * g(f)` from `f = 0`. Pass `k` fixes every coefficient of
/// degree `<= k`, so `D` passes suffice.
pub(super) fn solve_fixed_point(spec: &GSpec) -> Result<ReversionProblem, ReversionError> {
    let (m, d) = (spec.nvars(), spec.degree());
    let mut f = SeriesVector::zeros(m, m, d);
    for pass in 1..=d {
        let next = step(spec, &f)?;
        debug_assert!(
            (0..m).all(|i| next.get(i).with_degree(pass - 1) == f.get(i).with_degree(pass - 1)),
            "fixed-point pass {pass} changed a settled coefficient"
        );
        f = next;
    }
    Ok(ReversionProblem { spec: spec.clone(), f, y: spec.source() })
}

fn step(spec: &GSpec, f: &SeriesVector) -> Result<SeriesVector, ReversionError> {
    let entries = spec
        .g()
        .iter()
        .enumerate()
        .map(|(i, g_i)| Ok(g_i.compose(f)?.mul_variable(i)?))
        .collect::<Result<Vec<_>, ReversionError>>()?;
    Ok(SeriesVector::new(entries)?)
}

/// Matrix of `(d g_i / d x_j)` composed with `at`.
///
/// Differentiation runs at degree `D + 1` (with `g` zero above `D`) and the
/// result is cut back to `D`, so no top-degree coefficient is lost to the
/// derivative.
pub fn jacobian(spec: &GSpec, at: &SeriesVector) -> Result<SeriesMatrix, ReversionError> {
    let (m, d) = (spec.nvars(), spec.degree());
    if at.len() != m {
        return Err(ReversionError::SpecLength { got: at.len(), expected: m });
    }
    let at_ext = at.with_degree(d + 1);
    let g_ext = spec.g().with_degree(d + 1);
    SeriesMatrix::from_fn(m, m, d, |i, j| Ok(g_ext.get(i).derive(j)?.compose(&at_ext)?.with_degree(d)))
        .map_err(ReversionError::from)
}
