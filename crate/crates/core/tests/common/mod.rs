//! Shared strategies and oracles for the integration tests.

#![allow(dead_code)]

use nalgebra::DMatrix;
use nicolai::car::{Generator, Monomial};
use nicolai::coeff::ratio;
use nicolai::{CarPolynomial, Coeff, Exact, SiteIndex};
use num::complex::Complex64;
use proptest::prelude::*;

pub type P = CarPolynomial<Exact>;

pub fn c(i: SiteIndex) -> P {
    P::annihilator(i)
}

pub fn cd(i: SiteIndex) -> P {
    P::creator(i)
}

pub fn mono(cr: &[SiteIndex], an: &[SiteIndex]) -> Monomial {
    Monomial::from_sorted(cr, an).expect("sorted")
}

/// Sites of `lo..=hi` selected by the bits of `mask`.
pub fn mask_sites(mask: u32, lo: SiteIndex, hi: SiteIndex) -> Vec<SiteIndex> {
    (lo..=hi).filter(|&s| mask >> (s - lo) & 1 == 1).collect()
}

/// Every monomial whose sites all lie in `[lo, hi]`.
pub fn all_monomials(lo: SiteIndex, hi: SiteIndex) -> Vec<Monomial> {
    let width = (hi - lo + 1) as u32;
    let mut out = Vec::new();
    for cr in 0..(1u32 << width) {
        for an in 0..(1u32 << width) {
            out.push(mono(&mask_sites(cr, lo, hi), &mask_sites(an, lo, hi)));
        }
    }
    out
}

/// Small Gaussian-rational coefficient.
pub fn coeff() -> impl Strategy<Value = Exact> {
    (-4i64..=4, -3i64..=3, 1i64..=3).prop_map(|(re, im, den)| {
        let re = ratio(re, den);
        let im = ratio(im, den).times(&Exact::imag_unit());
        re.plus(&im)
    })
}

/// Monomial with sites in `[lo, hi]`.
pub fn monomial(lo: SiteIndex, hi: SiteIndex) -> impl Strategy<Value = Monomial> {
    let width = (hi - lo + 1) as u32;
    (0u32..(1 << width), 0u32..(1 << width)).prop_map(move |(cr, an)| mono(&mask_sites(cr, lo, hi), &mask_sites(an, lo, hi)))
}

/// Polynomial with up to `terms` monomials on `[lo, hi]`.
pub fn polynomial(lo: SiteIndex, hi: SiteIndex, terms: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((monomial(lo, hi), coeff()), 0..=terms).prop_map(P::from_terms)
}

/// Homogeneous polynomial of the requested parity.
pub fn homogeneous(lo: SiteIndex, hi: SiteIndex, terms: usize, odd: bool) -> impl Strategy<Value = P> {
    polynomial(lo, hi, terms).prop_map(move |p| if odd { p.grade_parts().odd } else { p.grade_parts().even })
}

/// Word of generators on `[lo, hi]`.
pub fn word(lo: SiteIndex, hi: SiteIndex, max_len: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(
        (lo..=hi, any::<bool>()).prop_map(|(s, dag)| {
            if dag {
                Generator::creation(s)
            } else {
                Generator::annihilation(s)
            }
        }),
        0..=max_len,
    )
}

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

/// Jordan-Wigner matrix of `c_j` on `modes` slots, slot 0 least significant:
/// `I^{⊗(L-1-j)} ⊗ a ⊗ Z^{⊗j}`.
pub fn jw_annihilator(modes: usize, slot: usize) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let id = DMatrix::<Complex64>::identity(2, 2);
    let z = DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]);
    let a = DMatrix::from_row_slice(2, 2, &[zero, one, zero, zero]);
    let mut m = DMatrix::<Complex64>::identity(1, 1);
    for s in (0..modes).rev() {
        let factor = match s.cmp(&slot) {
            std::cmp::Ordering::Greater => &id,
            std::cmp::Ordering::Equal => &a,
            std::cmp::Ordering::Less => &z,
        };
        m = kron(&m, factor);
    }
    m
}

/// Dense oracle representation of `p` on the window `lo..=hi`, built by
/// multiplying Jordan-Wigner generator matrices in word order.
pub fn jw_represent(p: &P, lo: SiteIndex, hi: SiteIndex) -> DMatrix<Complex64> {
    let modes = (hi - lo + 1) as usize;
    let dim = 1 << modes;
    let ann: Vec<DMatrix<Complex64>> = (0..modes).map(|s| jw_annihilator(modes, s)).collect();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (m, coef) in p.terms() {
        let mut t = DMatrix::<Complex64>::identity(dim, dim);
        for g in m.generators() {
            let a = &ann[(g.site - lo) as usize];
            t = if g.is_creation() { t * a.adjoint() } else { t * a };
        }
        out += t * coef.to_c64();
    }
    out
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
}
