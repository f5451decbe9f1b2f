use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::rational::factorial;

/// Exponent vector `(n_1, ..., n_m)`.
///
/// Ordered graded-lex: by total degree first, then lexicographically with
/// larger leading exponents first, so `x1^2 < x1*x2 < x2^2` among degree-2
/// monomials in two variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    /// The unit vector `e_i` (0-based).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.le_componentwise(self) {
            return None;
        }
        Some(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), other.len(), "multi-index length mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `prod_i n_i!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// Counts occurrences of each index in `alphas`, giving the exponent
    /// vector of the monomial `x_{alpha_1} ... x_{alpha_d}`.
    pub fn from_occurrences(m: usize, alphas: &[usize]) -> Option<MultiIndex> {
        let mut v = vec![0; m];
        for &a in alphas {
            *v.get_mut(a)? += 1;
        }
        Some(MultiIndex(v))
    }

    /// All multi-indices of length `m` with total degree at most `max_degree`,
    /// in graded-lex order.
    pub fn up_to_degree(m: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut current = vec![0; m];
            push_with_degree(&mut out, &mut current, 0, d);
        }
        out
    }

    /// All multi-indices `k` with `k <= max` componentwise, in graded-lex order.
    pub fn in_box(max: &MultiIndex) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(max.len())];
        for (i, &bound) in max.0.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|k| {
                    (0..=bound).map(move |e| {
                        let mut v = k.0.clone();
                        v[i] = e;
                        MultiIndex(v)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

// Fills positions `pos..` of `current` with every split of `remaining`,
// larger leading exponents first.
fn push_with_degree(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        push_with_degree(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let all = MultiIndex::up_to_degree(2, 2);
        let expected: Vec<MultiIndex> =
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]].iter().map(|v| MultiIndex::new(v.to_vec())).collect();
        assert_eq!(all, expected);
        let mut sorted = all.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn degree_grid_sizes() {
        // C(m + D, m) monomials
        assert_eq!(MultiIndex::up_to_degree(3, 5).len(), 56);
        assert_eq!(MultiIndex::up_to_degree(1, 4).len(), 5);
        assert_eq!(MultiIndex::up_to_degree(0, 3).len(), 1);
    }

    #[test]
    fn box_enumeration() {
        let b = MultiIndex::in_box(&MultiIndex::new(vec![2, 1]));
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], MultiIndex::zeros(2));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn occurrences_and_factorial() {
        let e = MultiIndex::from_occurrences(3, &[0, 2, 0]).unwrap();
        assert_eq!(e, MultiIndex::new(vec![2, 0, 1]));
        assert_eq!(e.factorial(), BigInt::from(2));
        assert!(MultiIndex::from_occurrences(2, &[2]).is_none());
    }

    #[test]
    fn componentwise_ops() {
        let a = MultiIndex::new(vec![2, 1]);
        let b = MultiIndex::new(vec![1, 1]);
        assert!(b.le_componentwise(&a));
        assert!(!a.le_componentwise(&b));
        assert_eq!(a.checked_sub(&b), Some(MultiIndex::new(vec![1, 0])));
        assert_eq!(b.checked_sub(&a), None);
    }
}
