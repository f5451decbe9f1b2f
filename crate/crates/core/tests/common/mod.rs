#![allow(dead_code)]

use lagrange_good::series::rational::rat;
use lagrange_good::{GSpec, MultiIndex, Rational, TruncatedSeries};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in [-3, 3], denominator in {1, 2, 3}.
pub fn small_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let num = rng.gen_range(-3..=3);
        if nonzero && num == 0 {
            continue;
        }
        return rat(num, rng.gen_range(1..=3));
    }
}

/// Random polynomial g_i: nonzero constant term, every other monomial of
/// degree <= `degree` present with probability 1/2.
pub fn random_spec<R: Rng>(rng: &mut R, m: usize, degree: u32) -> GSpec {
    let g = (0..m)
        .map(|_| {
            let terms: Vec<(MultiIndex, Rational)> = MultiIndex::up_to_degree(m, degree)
                .into_iter()
                .filter_map(|e| {
                    if e.degree() == 0 {
                        Some((e, small_rational(rng, true)))
                    } else if rng.gen_bool(0.5) {
                        Some((e, small_rational(rng, false)))
                    } else {
                        None
                    }
                })
                .collect();
            TruncatedSeries::from_terms(m, degree, terms).unwrap()
        })
        .collect();
    GSpec::from_series(g).unwrap()
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, m: usize) -> Vec<Vec<Rational>> {
    (0..m).map(|_| (0..m).map(|_| rat(rng.gen_range(-2..=2), 1)).collect()).collect()
}

pub fn x(m: usize, d: u32, j: usize) -> TruncatedSeries {
    TruncatedSeries::variable(m, d, j).unwrap()
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}
