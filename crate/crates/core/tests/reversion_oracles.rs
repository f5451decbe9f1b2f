//! Reversion-side identities against independent routes.

mod common;

use common::{mi, random_int_matrix, random_spec, rng, x};
use lagrange_good::reversion::field::{
    gamma_jacobian, interaction_jacobian, inverse_propagator, propagator, trace_log_sum,
};
use lagrange_good::reversion::{lhs_coeff, macmahon_check, rhs_coeff, verify_theorem};
use lagrange_good::series::rational::{factorial, int, rat};
use lagrange_good::{GSpec, MultiIndex, Rational, SeriesMatrix, SeriesVector, TruncatedSeries};
use num_bigint::BigInt;

/// All tuples in `{0..m}^d`.
fn tuples(m: usize, d: usize) -> Vec<Vec<usize>> {
    (0..d).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..m).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect()
    })
}

fn product_at(h: &SeriesVector, alphas: &[usize]) -> TruncatedSeries {
    let first = h.get(0);
    alphas.iter().fold(TruncatedSeries::one(first.nvars(), first.degree()), |acc, &a| &acc * h.get(a))
}

fn inv_factorial(d: usize) -> Rational {
    Rational::from_integer(factorial(d as u32)).recip()
}

// Gamma_i(h) = sum_{d>=1} (1/d!) sum_alpha eta^[d]_{i,alpha} h_alpha1 ... h_alphad
fn gamma_by_tensors(spec: &GSpec, h: &SeriesVector) -> Vec<TruncatedSeries> {
    let (m, d) = (spec.nvars(), spec.degree());
    (0..m)
        .map(|i| {
            let mut acc = TruncatedSeries::zero(m, d);
            for order in 1..=d as usize {
                for alphas in tuples(m, order) {
                    let eta = spec.gamma_tensor(i, &alphas).unwrap();
                    acc = &acc + &(&eta * &product_at(h, &alphas)).scale(&inv_factorial(order));
                }
            }
            acc
        })
        .collect()
}

// dH_ij(z) = sum_{d>=2} (1/(d-1)!) sum x_i w^[d]_{i,j,alpha} z_alpha
fn interaction_by_tensors(spec: &GSpec, z: &SeriesVector) -> SeriesMatrix {
    let (m, d) = (spec.nvars(), spec.degree());
    SeriesMatrix::from_fn(m, m, d, |i, j| {
        let mut acc = TruncatedSeries::zero(m, d);
        for order in 2..=d as usize {
            for rest in tuples(m, order - 1) {
                let mut alphas = vec![j];
                alphas.extend(&rest);
                let w = spec.symmetric_tensor(i, &alphas).unwrap();
                let term = product_at(z, &rest).scale(&w).mul_variable(i).unwrap();
                acc = &acc + &term.scale(&inv_factorial(order - 1));
            }
        }
        Ok(acc)
    })
    .unwrap()
}

#[test]
fn gamma_closed_form_matches_tensor_expansion() {
    let mut r = rng(11);
    for m in 1..=2 {
        for _ in 0..3 {
            let spec = random_spec(&mut r, m, 4);
            let prob = spec.solve().unwrap();
            let closed = spec.gamma_apply(prob.f()).unwrap();
            assert_eq!(closed.as_slice(), gamma_by_tensors(&spec, prob.f()).as_slice());
            // arbitrary argument, not just the solution
            let h = SeriesVector::new((0..m).map(|j| &x(m, 4, j) - &x(m, 4, (j + 1) % m).pow(2)).collect()).unwrap();
            assert_eq!(spec.gamma_apply(&h).unwrap().as_slice(), gamma_by_tensors(&spec, &h).as_slice());
        }
    }
}

#[test]
fn gamma_round_trip_on_solution() {
    let mut r = rng(12);
    for m in 1..=3 {
        for _ in 0..4 {
            let spec = random_spec(&mut r, m, 5);
            let prob = spec.solve().unwrap();
            assert_eq!(&spec.gamma_apply(prob.f()).unwrap(), prob.y());
            for (i, f_i) in prob.f().iter().enumerate() {
                assert!(f_i.constant_term() == int(0));
                assert_eq!(f_i, &spec.g().get(i).compose(prob.f()).unwrap().mul_variable(i).unwrap());
            }
        }
    }
}

#[test]
fn interaction_jacobian_matches_tensor_route() {
    let mut r = rng(13);
    for m in 1..=2 {
        for _ in 0..3 {
            let spec = random_spec(&mut r, m, 4);
            let prob = spec.solve().unwrap();
            assert_eq!(interaction_jacobian(&spec, prob.f()).unwrap(), interaction_by_tensors(&spec, prob.f()));
        }
    }
}

#[test]
fn symmetric_tensor_is_permutation_invariant() {
    let mut r = rng(14);
    let spec = random_spec(&mut r, 3, 4);
    for alphas in tuples(3, 3) {
        let mut sorted = alphas.clone();
        sorted.sort();
        for i in 0..3 {
            assert_eq!(spec.symmetric_tensor(i, &alphas).unwrap(), spec.symmetric_tensor(i, &sorted).unwrap());
        }
    }
}

#[test]
fn single_variable_lagrange_formula() {
    // [x^n] f^k = (k/n) [x^{n-k}] g^n
    let mut r = rng(15);
    for _ in 0..5 {
        let spec = random_spec(&mut r, 1, 6);
        let prob = spec.solve().unwrap();
        let f = prob.f().get(0);
        for n in 1..=6u32 {
            let g_n = spec.g().get(0).pow(n);
            for k in 1..=n {
                let lhs = f.pow(k).coeff(&mi(&[n])).unwrap();
                let rhs = g_n.coeff(&mi(&[n - k])).unwrap() * rat(k as i64, n as i64);
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }
}

#[test]
fn determinant_normalisation_and_z_forms() {
    let mut r = rng(16);
    for m in 1..=3 {
        for _ in 0..3 {
            let spec = random_spec(&mut r, m, 5);
            let prob = spec.solve().unwrap();
            let lg = prob.lg_matrix().unwrap();
            let det = lg.det().unwrap();
            assert!(det.constant_term() == int(1));
            let via_gamma = gamma_jacobian(&spec, prob.f()).unwrap().det().unwrap();
            assert_eq!(det.invert_unit().unwrap(), via_gamma.invert_unit().unwrap());

            let n = prob.jacobian().unwrap().diag_x_mul().unwrap();
            assert_eq!(det.invert_unit().unwrap().log_series().unwrap(), trace_log_sum(&n).unwrap());

            let c_inv = inverse_propagator(&spec).unwrap();
            let ident = SeriesMatrix::identity(m, m, 5);
            assert_eq!(c_inv.mat_mul(&propagator(&spec).unwrap()).unwrap(), ident);
            let split = c_inv.mat_sub(&interaction_jacobian(&spec, prob.f()).unwrap()).unwrap();
            assert_eq!(split, lg);
        }
    }
}

#[test]
fn randomized_identity_small() {
    let mut r = rng(17);
    for m in 1..=3 {
        let spec = random_spec(&mut r, m, 4);
        let report = verify_theorem(&spec, &MultiIndex::new(vec![2; m]), 4).unwrap();
        assert!(report.pass, "first mismatch {:?}", report.mismatches().next());
        // spot-check the standalone coefficient functions against the sweep
        let prob = spec.solve().unwrap();
        for cell in report.cells.iter().step_by(7) {
            assert_eq!(lhs_coeff(&spec, &cell.k, &cell.n).unwrap(), cell.lhs);
            assert_eq!(rhs_coeff(&prob, &cell.k, &cell.n).unwrap(), cell.rhs);
        }
    }
}

// Brute-force [x^n] of prod_i (sum_j A_ij x_j)^{n_i}: choose a column for
// every factor.
fn macmahon_brute(a: &[Vec<Rational>], n: &MultiIndex) -> Rational {
    let factors: Vec<usize> =
        n.exponents().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
    let m = a.len();
    let mut total = int(0);
    for cols in tuples(m, factors.len()) {
        let mut counts = vec![0u32; m];
        cols.iter().for_each(|&c| counts[c] += 1);
        if counts != n.exponents() {
            continue;
        }
        total += factors.iter().zip(&cols).fold(int(1), |acc, (&i, &j)| acc * &a[i][j]);
    }
    total
}

#[test]
fn macmahon_random_matrices() {
    let mut r = rng(18);
    for m in 2..=3 {
        for _ in 0..3 {
            let a = random_int_matrix(&mut r, m);
            for n in MultiIndex::up_to_degree(m, 4) {
                let (lhs, rhs) = macmahon_check(&a, &n).unwrap();
                assert_eq!(lhs, rhs, "A={a:?} n={n}");
                assert_eq!(lhs, macmahon_brute(&a, &n));
            }
        }
    }
}

#[test]
fn degenerate_specs_have_zero_solution() {
    let mut r = rng(19);
    for m in 1..=3 {
        let spec = random_spec(&mut r, m, 4);
        let shifted: Vec<TruncatedSeries> =
            spec.g().iter().map(|g| g - &TruncatedSeries::constant(m, 4, g.constant_term())).collect();
        let spec = GSpec::from_series(shifted).unwrap();
        assert!(spec.is_degenerate());
        let prob = spec.solve().unwrap();
        assert!(prob.f().iter().all(TruncatedSeries::is_zero));
        assert!(prob.y().iter().all(TruncatedSeries::is_zero));
        assert!(verify_theorem(&spec, &MultiIndex::new(vec![2; m]), 4).unwrap().pass);
    }
}

#[test]
fn factorial_normalisation_of_lhs() {
    // lhs(k, n) = (n!/k!) [x^{n-k}] prod g^n, checked by direct expansion
    let spec =
        GSpec::from_series(vec![&TruncatedSeries::one(2, 4) + &x(2, 4, 1), &x(2, 4, 0) - &TruncatedSeries::one(2, 4)])
            .unwrap();
    let (k, n) = (mi(&[1, 0]), mi(&[2, 1]));
    let prod = &spec.g().get(0).pow(2) * spec.g().get(1);
    let expected = prod.coeff(&mi(&[1, 1])).unwrap() * Rational::new(BigInt::from(2), BigInt::from(1));
    assert_eq!(lhs_coeff(&spec, &k, &n).unwrap(), expected);
}
