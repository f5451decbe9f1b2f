use super::{SeriesError, TruncatedSeries};

/// A vector of series that all share `(m, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesVector {
    entries: Vec<TruncatedSeries>,
}

impl SeriesVector {
    /// Fails unless every entry agrees with the first on `(m, D)`.
    pub fn new(entries: Vec<TruncatedSeries>) -> Result<Self, SeriesError> {
        if let Some(first) = entries.first() {
            for e in &entries[1..] {
                if e.nvars() != first.nvars() || e.degree() != first.degree() {
                    return Err(SeriesError::ShapeMismatch {
                        left_vars: first.nvars(),
                        left_degree: first.degree(),
                        right_vars: e.nvars(),
                        right_degree: e.degree(),
                    });
                }
            }
        }
        Ok(SeriesVector { entries })
    }

    pub fn zeros(len: usize, nvars: usize, degree: u32) -> Self {
        SeriesVector { entries: vec![TruncatedSeries::zero(nvars, degree); len] }
    }

    /// `(x_1, ..., x_m)`, the identity substitution.
    pub fn variables(nvars: usize, degree: u32) -> Self {
        let entries =
            (0..nvars).map(|j| TruncatedSeries::variable(nvars, degree, j).expect("index in range")).collect();
        SeriesVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &TruncatedSeries {
        &self.entries[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TruncatedSeries> {
        self.entries.iter()
    }

    pub fn as_slice(&self) -> &[TruncatedSeries] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<TruncatedSeries> {
        self.entries
    }

    /// Applies [`TruncatedSeries::with_degree`] entrywise.
    pub fn with_degree(&self, degree: u32) -> Self {
        SeriesVector { entries: self.entries.iter().map(|s| s.with_degree(degree)).collect() }
    }
}

impl<'a> IntoIterator for &'a SeriesVector {
    type Item = &'a TruncatedSeries;
    type IntoIter = std::slice::Iter<'a, TruncatedSeries>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
