//! The Fock representation against an independent Jordan-Wigner oracle.

mod common;

use common::*;
use nicolai::coeff::ratio;
use nicolai::fock::{
    expectation, operator_norm, represent, represent_on_region, FockError, FockVector, NormMethod, Window,
};
use nicolai::model::{averaged_witness, supercharge, superderivation, Region, SuperchargeSpec, WitnessSpec};
use nicolai::{Coeff, Execution, Interval};
use num::complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn win(lo: i64, hi: i64) -> Window {
    Window::interval(Interval::new(lo, hi)).unwrap()
}

fn random_vector(window: &Window, seed: u64) -> FockVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..window.dim())
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    FockVector::new(window, amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_jordan_wigner_oracle(a in polynomial(0, 4, 6)) {
        let rep = represent(&a, &win(0, 4)).unwrap().matrix.to_dense();
        prop_assert!(max_abs_diff(&rep, &jw_represent(&a, 0, 4)) < 1e-12);
    }

    #[test]
    fn star_homomorphism(a in polynomial(0, 4, 5), b in polynomial(0, 4, 5), z in coeff()) {
        let w = win(0, 4);
        let rep = |p: &P| represent(p, &w).unwrap().matrix;
        let exec = Execution::default();
        prop_assert!(rep(&(&a * &b)).max_abs_diff(&rep(&a).mul(&rep(&b), exec)) < 1e-12);
        prop_assert!(rep(&(&a + &b)).max_abs_diff(&rep(&a).add(&rep(&b))) < 1e-12);
        prop_assert!(rep(&a.adjoint()).max_abs_diff(&rep(&a).adjoint()) < 1e-12);
        prop_assert!(rep(&a.scale(&z)).max_abs_diff(&rep(&a).scale(z.to_c64())) < 1e-12);
    }

    #[test]
    fn faithful_on_the_window(a in polynomial(0, 3, 6)) {
        let rep = represent(&a, &win(0, 3)).unwrap();
        prop_assert_eq!(rep.matrix.nnz() == 0, a.is_zero());
    }

    #[test]
    fn norm_is_window_independent(a in polynomial(1, 3, 4)) {
        let reference = operator_norm(&represent(&a, &win(1, 3)).unwrap(), NormMethod::DenseSvd).unwrap();
        for (lo, hi) in [(0, 3), (0, 4), (-1, 5)] {
            let n = operator_norm(&represent(&a, &win(lo, hi)).unwrap(), NormMethod::DenseSvd).unwrap();
            prop_assert!((n - reference).abs() <= 1e-10 * reference.max(1.0), "[{lo}, {hi}]: {n} vs {reference}");
        }
    }
}

#[test]
fn distant_generators_anticommute_exactly() {
    let w = win(0, 7);
    let exec = Execution::default();
    for i in 0..8 {
        for j in 0..8 {
            if i == j {
                continue;
            }
            let a = represent(&c(i), &w).unwrap().matrix;
            let b = represent(&cd(j), &w).unwrap().matrix;
            let anti = a.mul(&b, exec).add(&b.mul(&a, exec));
            assert_eq!(anti.nnz(), 0, "{{c_{i}, c*_{j}}}");
            assert_eq!(anti.max_abs(), 0.0);
        }
    }
}

#[test]
fn folded_supercharge_is_nilpotent() {
    for g in [ratio(0, 1), ratio(1, 1)] {
        for (m, n) in [(2, 2), (4, 4), (4, 6)] {
            let region = Region::periodic(m, n).unwrap();
            let q = represent_on_region(&supercharge(&SuperchargeSpec { g: g.clone(), region }), &region).unwrap();
            let q2 = q.mul(&q, Execution::default()).unwrap();
            assert!(q2.matrix.max_abs() < 1e-14, "Q^2 on {region}");
        }
    }
}

#[test]
fn witness_expectation_is_state_independent() {
    let g = ratio(2, 3);
    let o = averaged_witness(&g, 2).unwrap();
    let delta = superderivation(&g, &o);
    let w = win(-1, 5);
    let op = represent(&delta, &w).unwrap();
    for seed in 0..5 {
        let e = expectation(&op, &random_vector(&w, seed)).unwrap();
        assert!((e - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-12, "{e}");
    }
    let o1 = nicolai::model::witness_operator(&WitnessSpec { g: ratio(1, 1), k: 1 }).unwrap();
    assert!(matches!(represent(&o1, &win(0, 3)), Err(FockError::SupportOutsideWindow { site: -1 })));
}

#[test]
fn sequential_and_parallel_builds_agree() {
    let region = Region::periodic(4, 4).unwrap();
    let h = nicolai::model::region_hamiltonian(&ratio(1, 1), &region);
    let w = Window::from_region(&region).unwrap();
    let folded = h.relabel(|s| region.fold(s));
    let seq = nicolai::fock::represent_with(&folded, &w, Execution::Sequential).unwrap();
    let par = nicolai::fock::represent_with(&folded, &w, Execution::default()).unwrap();
    assert_eq!(seq, par);
}
