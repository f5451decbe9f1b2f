use num_traits::Zero;

use super::{Rational, SeriesError, TruncatedSeries};

/// Largest matrix [`SeriesMatrix::det`] accepts.
pub const DEFAULT_DET_LIMIT: usize = 8;

/// Square matrix of series sharing `(m, D)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    size: usize,
    nvars: usize,
    degree: u32,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn from_rows(rows: Vec<Vec<TruncatedSeries>>) -> Result<Self, SeriesError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(SeriesError::NotSquare);
        }
        let entries: Vec<TruncatedSeries> = rows.into_iter().flatten().collect();
        let (nvars, degree) = match entries.first() {
            Some(s) => (s.nvars(), s.degree()),
            None => (0, 0),
        };
        for e in &entries {
            if e.nvars() != nvars || e.degree() != degree {
                return Err(SeriesError::ShapeMismatch {
                    left_vars: nvars,
                    left_degree: degree,
                    right_vars: e.nvars(),
                    right_degree: e.degree(),
                });
            }
        }
        Ok(SeriesMatrix { size, nvars, degree, entries })
    }

    pub fn from_fn<F>(size: usize, nvars: usize, degree: u32, mut f: F) -> Result<Self, SeriesError>
    where
        F: FnMut(usize, usize) -> Result<TruncatedSeries, SeriesError>,
    {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let e = f(i, j)?;
                if e.nvars() != nvars || e.degree() != degree {
                    return Err(SeriesError::ShapeMismatch {
                        left_vars: nvars,
                        left_degree: degree,
                        right_vars: e.nvars(),
                        right_degree: e.degree(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(SeriesMatrix { size, nvars, degree, entries })
    }

    /// Matrix of constant series.
    pub fn from_constants(rows: &[Vec<Rational>], nvars: usize, degree: u32) -> Result<Self, SeriesError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(SeriesError::NotSquare);
        }
        Self::from_fn(size, nvars, degree, |i, j| Ok(TruncatedSeries::constant(nvars, degree, rows[i][j].clone())))
    }

    pub fn identity(size: usize, nvars: usize, degree: u32) -> Self {
        let entries = (0..size * size)
            .map(|k| {
                if k / size == k % size {
                    TruncatedSeries::one(nvars, degree)
                } else {
                    TruncatedSeries::zero(nvars, degree)
                }
            })
            .collect();
        SeriesMatrix { size, nvars, degree, entries }
    }

    pub fn zero(size: usize, nvars: usize, degree: u32) -> Self {
        SeriesMatrix { size, nvars, degree, entries: vec![TruncatedSeries::zero(nvars, degree); size * size] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.size + j]
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if self.size != other.size {
            return Err(SeriesError::NotSquare);
        }
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

    pub fn mat_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(SeriesMatrix { entries, ..self.clone() })
    }

    pub fn mat_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(SeriesMatrix { entries, ..self.clone() })
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let n = self.size;
        Self::from_fn(n, self.nvars, self.degree, |i, j| {
            Ok((0..n).fold(TruncatedSeries::zero(self.nvars, self.degree), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            }))
        })
    }

    pub fn mat_trace(&self) -> TruncatedSeries {
        (0..self.size).fold(TruncatedSeries::zero(self.nvars, self.degree), |acc, i| &acc + self.get(i, i))
    }

    /// `diag(x_1, ..., x_m) * self`: row `i` multiplied by `x_i`.
    pub fn diag_x_mul(&self) -> Result<Self, SeriesError> {
        if self.size != self.nvars {
            return Err(SeriesError::LengthMismatch { got: self.size, expected: self.nvars });
        }
        Self::from_fn(self.size, self.nvars, self.degree, |i, j| self.get(i, j).mul_variable(i))
    }

    pub fn det(&self) -> Result<TruncatedSeries, SeriesError> {
        self.det_with_limit(DEFAULT_DET_LIMIT)
    }

    /// Division-free determinant: Laplace expansion along successive rows,
    /// memoised over column subsets (`2^n * n` series products).
    pub fn det_with_limit(&self, limit: usize) -> Result<TruncatedSeries, SeriesError> {
        let n = self.size;
        if n > limit {
            return Err(SeriesError::MatrixTooLarge { size: n, limit });
        }
        // minors[s] = det of rows 0..|s| restricted to the columns in bitmask s
        let mut minors = vec![TruncatedSeries::zero(self.nvars, self.degree); 1 << n];
        minors[0] = TruncatedSeries::one(self.nvars, self.degree);
        for s in 1usize..(1 << n) {
            let row = s.count_ones() as usize - 1;
            let mut acc = TruncatedSeries::zero(self.nvars, self.degree);
            for j in (0..n).filter(|j| s & (1 << j) != 0) {
                let entry = self.get(row, j);
                let rest = s & !(1 << j);
                if entry.is_zero() || minors[rest].is_zero() {
                    continue;
                }
                let term = entry * &minors[rest];
                // sign from the number of chosen columns to the right of j
                if (s >> (j + 1)).count_ones() % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            minors[s] = acc;
        }
        Ok(minors.pop().expect("non-empty table"))
    }

    /// Inverse of `I - N` where `N` has no constant terms, as `sum_{k<=D} N^k`.
    pub fn inverse_near_identity(&self) -> Result<Self, SeriesError> {
        let ident = Self::identity(self.size, self.nvars, self.degree);
        let nil = ident.mat_sub(self)?;
        if nil.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return Err(SeriesError::NotNearIdentity);
        }
        let mut acc = ident.clone();
        let mut power = ident;
        for _ in 0..self.degree {
            power = power.mat_mul(&nil)?;
            if power.entries.iter().all(TruncatedSeries::is_zero) {
                break;
            }
            acc = acc.mat_add(&power)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncatedSeries::is_zero)
    }

    /// Every entry has a zero constant term.
    pub fn is_nilpotent_part(&self) -> bool {
        self.entries.iter().all(|e| e.constant_term().is_zero())
    }
}

impl std::fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
