//! Supercharges, superderivations and witness operators.

mod common;

use common::*;
use nicolai::coeff::ratio;
use nicolai::model::{
    averaged_witness, conjugate_superderivation, hamiltonian_derivation, region_hamiltonian, superderivation,
    superderivation_in, superderivation_region, supercharge, susy_laplacian, witness_operator, Boundary,
    Conjugation, ModelError, Region, SuperchargeSpec, WitnessSpec,
};
use nicolai::{Coeff, Exact, Interval};
use proptest::prelude::*;

fn q(g: &Exact, region: Region) -> P {
    supercharge(&SuperchargeSpec { g: g.clone(), region })
}

fn couplings() -> impl Strategy<Value = Exact> {
    prop_oneof![Just(ratio(0, 1)), Just(ratio(1, 1)), Just(ratio(-1, 2)), Just(ratio(2, 3)), Just(ratio(3, 1))]
}

#[test]
fn supercharges_are_odd_and_nilpotent() {
    for g in [ratio(0, 1), ratio(1, 1), ratio(-3, 2)] {
        for (m, n) in [(2, 2), (2, 4), (4, 2), (6, 4)] {
            for region in [Region::periodic(m, n).unwrap(), Region::free(m, n).unwrap()] {
                let qr = q(&g, region);
                assert_eq!(qr.parity(), Some(nicolai::Parity::Odd));
                assert!((&qr * &qr).is_zero(), "Q^2 on {region}");
            }
        }
    }
}

#[test]
fn hamiltonians_are_self_adjoint_and_number_conserving() {
    for boundary in [Boundary::Periodic, Boundary::Free] {
        let h = region_hamiltonian(&ratio(1, 2), &Region::with_boundary(4, 4, boundary).unwrap());
        assert!(h.is_self_adjoint());
        assert!(h.terms().all(|(m, _)| m.charge() == 0 && !m.is_odd()));
    }
}

#[test]
fn witness_identity_for_several_couplings() {
    for g in [ratio(1, 1), ratio(-1, 1), ratio(2, 3), ratio(7, 1), ratio(-5, 3)] {
        for k in -2..=4 {
            let o = witness_operator(&WitnessSpec { g: g.clone(), k }).unwrap();
            assert_eq!(o.support().unwrap(), Some(Interval::new(2 * k - 3, 2 * k + 1)));
            assert_eq!(superderivation(&g, &o), P::scalar(g.clone()), "k = {k}");
        }
        for n in 1..=3 {
            let o = averaged_witness(&g, n).unwrap();
            assert_eq!(superderivation(&g, &o), P::scalar(g.clone()), "n = {n}");
        }
    }
    assert_eq!(
        witness_operator(&WitnessSpec { g: ratio(0, 1), k: 1 }).unwrap_err(),
        ModelError::ZeroCoupling
    );
}

#[test]
fn distant_witnesses_anticommute() {
    let g = ratio(1, 1);
    let o = |k| witness_operator(&WitnessSpec { g: g.clone(), k }).unwrap();
    for k in 0..3 {
        for k2 in 0..8 {
            if (k2 as i64 - k as i64).abs() > 2 {
                assert!(o(k).adjoint().anticommutator(&o(k2)).is_zero(), "{{O*_{k}, O_{k2}}}");
                assert!(o(k).anticommutator(&o(k2)).is_zero());
            }
        }
    }
}

#[test]
fn laplacian_matches_hamiltonian_commutator_on_generators() {
    for g in [ratio(0, 1), ratio(1, 1), ratio(-2, 3)] {
        for s in -2..=3 {
            for a in [c(s), cd(s), P::number_op(s)] {
                assert_eq!(susy_laplacian(&g, &a), hamiltonian_derivation(&g, &a), "site {s}");
            }
        }
    }
}

#[test]
fn undersized_region_is_rejected() {
    let err = superderivation_in(&ratio(1, 1), &c(5), &Region::periodic(2, 2).unwrap(), Conjugation::Plain);
    assert!(matches!(err, Err(ModelError::RegionTooSmall { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn superderivation_squares_to_zero(m in monomial(-1, 4), g in couplings()) {
        let a = P::from_monomial(m, Exact::one());
        prop_assert!(superderivation(&g, &superderivation(&g, &a)).is_zero());
        prop_assert!(conjugate_superderivation(&g, &conjugate_superderivation(&g, &a)).is_zero());
    }

    #[test]
    fn superderivation_is_region_independent(a in polynomial(0, 5, 3), g in couplings(), odd in any::<bool>()) {
        let a = if odd { a.grade_parts().odd } else { a.grade_parts().even };
        let Ok(Some(support)) = a.support() else { return Ok(()); };
        let base = superderivation_region(&support);
        let reference = superderivation(&g, &a);
        for extra in [2, 4] {
            let wide = Region::new(base.left() - extra, base.right() + extra, Boundary::Periodic).unwrap();
            let free = Region::new(base.left() - extra, base.right() + extra + 1, Boundary::Free).unwrap();
            for region in [wide, free] {
                for which in [Conjugation::Plain, Conjugation::Adjoint] {
                    let expected = if which == Conjugation::Plain {
                        reference.clone()
                    } else {
                        conjugate_superderivation(&g, &a)
                    };
                    prop_assert_eq!(superderivation_in(&g, &a, &region, which).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn superderivation_commutes_with_even_translations(a in polynomial(-2, 3, 3), g in couplings(), k in -3i64..=3) {
        let a = a.grade_parts().odd;
        prop_assert_eq!(superderivation(&g, &a.shift(2 * k)), superderivation(&g, &a).shift(2 * k));
    }

    #[test]
    fn superderivation_is_a_graded_derivation(a in homogeneous(0, 3, 2, true), b in polynomial(0, 3, 2), g in couplings()) {
        // δ(ab) = δ(a) b - a δ(b) for odd a
        let lhs = superderivation(&g, &(&a * &b));
        let rhs = &(&superderivation(&g, &a) * &b) - &(&a * &superderivation(&g, &b));
        prop_assert_eq!(lhs, rhs);
    }
}
