use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;

use super::monomial::{Generator, Monomial};
use super::{AlgebraError, Interval, SiteIndex};
use crate::coeff::{Coeff, Exact};

/// Grade of a homogeneous element under the parity automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(m: &Monomial) -> Self {
        if m.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Finite linear combination of normal-ordered monomials. Zero
/// coefficients are never stored, so structural equality is algebraic
/// equality.
#[derive(Debug, Clone, PartialEq)]
pub struct CarPolynomial<C: Coeff = Exact> {
    terms: BTreeMap<Monomial, C>,
}

/// Even and odd components of a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPair<C: Coeff = Exact> {
    pub even: CarPolynomial<C>,
    pub odd: CarPolynomial<C>,
}

impl<C: Coeff> Default for CarPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> CarPolynomial<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::from_monomial(Monomial::identity(), c)
    }

    pub fn from_monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The annihilation operator `c_i`.
    pub fn annihilator(i: SiteIndex) -> Self {
        Self::from_monomial(Monomial::annihilator(i), C::one())
    }

    /// The creation operator `c*_i`.
    pub fn creator(i: SiteIndex) -> Self {
        Self::from_monomial(Monomial::creator(i), C::one())
    }

    pub fn generator(g: Generator) -> Self {
        if g.is_creation() {
            Self::creator(g.site)
        } else {
            Self::annihilator(g.site)
        }
    }

    /// Number operator `n_i = c*_i c_i`.
    pub fn number_op(i: SiteIndex) -> Self {
        Self::from_monomial(Monomial::from_sorted(&[i], &[i]).expect("single site"), C::one())
    }

    /// Normal-ordered product of a generator word, left to right.
    pub fn word(gens: &[Generator]) -> Self {
        gens.iter()
            .fold(Self::identity(), |acc, &g| acc.multiply(&Self::generator(g)))
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_negligible() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_negligible() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// The identity coefficient if the polynomial is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::identity()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.times(c))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.times(cb);
                for (sign, m) in ma.product(mb) {
                    accumulate(&mut acc, m, &c, sign);
                }
            }
        }
        Self::pruned(acc)
    }

    fn pruned(mut acc: BTreeMap<Monomial, C>) -> Self {
        acc.retain(|_, c| !c.is_negligible());
        Self { terms: acc }
    }

    /// The `*`-operation: antilinear, reverses products.
    pub fn adjoint(&self) -> Self {
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let (sign, adj) = m.adjoint();
            accumulate(&mut acc, adj, &c.conj(), sign);
        }
        Self::pruned(acc)
    }

    /// Parity automorphism: negates the odd part.
    pub fn gamma(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.is_odd() { c.negated() } else { c.clone() }))
                .collect(),
        }
    }

    pub fn grade_parts(&self) -> GradedPair<C> {
        let (odd, even): (BTreeMap<_, _>, BTreeMap<_, _>) =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).partition(|(m, _)| m.is_odd());
        GradedPair {
            even: Self { terms: even },
            odd: Self { terms: odd },
        }
    }

    /// `Some` parity when every term shares it. The zero polynomial counts
    /// as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut grades = self.terms.keys().map(Parity::of);
        let first = grades.next().unwrap_or(Parity::Even);
        grades.all(|p| p == first).then_some(first)
    }

    pub fn shift(&self, k: SiteIndex) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.shifted(k), c.clone())).collect(),
        }
    }

    /// Relabels every site through `f` and re-normal-orders. Used for
    /// periodic folding, where distinct sites may collide.
    pub fn relabel(&self, f: impl Fn(SiteIndex) -> SiteIndex) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let gens: Vec<Generator> = m
                .generators()
                .map(|g| Generator { site: f(g.site), ..g })
                .collect();
            out = out.add(&Self::word(&gens).scale(c));
        }
        out
    }

    /// Smallest interval containing every site. `Ok(None)` for a nonzero
    /// multiple of the identity.
    pub fn support(&self) -> Result<Option<Interval>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::EmptySupport);
        }
        Ok(self
            .terms
            .keys()
            .filter_map(Monomial::support)
            .reduce(|a, b| a.hull(&b)))
    }

    pub fn sites(&self) -> BTreeSet<SiteIndex> {
        self.terms.keys().flat_map(|m| m.sites()).collect()
    }

    /// Graded commutator `[a, b]_γ` for homogeneous `a`, extended linearly
    /// in `b`: `ab - ba` if `a` is even, `ab - γ(b)a` if `a` is odd. Pairs of
    /// monomials on disjoint sites are skipped; they contribute exactly zero.
    pub fn graded_commutator(&self, b: &Self) -> Result<Self, AlgebraError> {
        let a_parity = self.parity().ok_or(AlgebraError::NonHomogeneousArgument)?;
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &b.terms {
                if !ma.shares_site(mb) {
                    continue;
                }
                let c = ca.times(cb);
                let both_odd = a_parity == Parity::Odd && mb.is_odd();
                for (sign, m) in ma.product(mb) {
                    accumulate(&mut acc, m, &c, sign);
                }
                for (sign, m) in mb.product(ma) {
                    accumulate(&mut acc, m, &c, if both_odd { sign } else { -sign });
                }
            }
        }
        Ok(Self::pruned(acc))
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, b: &Self) -> Self {
        self.multiply(b).add(&b.multiply(self))
    }

    /// `ab - ba`.
    pub fn commutator(&self, b: &Self) -> Self {
        self.multiply(b).sub(&b.multiply(self))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CarPolynomial<D> {
        CarPolynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn to_float(&self) -> CarPolynomial<Complex64> {
        self.map_coeffs(|c| c.to_c64())
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// Largest coefficient modulus, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }
}

fn accumulate<C: Coeff>(acc: &mut BTreeMap<Monomial, C>, m: Monomial, c: &C, sign: i8) {
    let val = if sign < 0 { c.negated() } else { c.clone() };
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(val);
        }
        Entry::Occupied(mut o) => o.get_mut().add_assign(&val),
    }
}

impl<C: Coeff> GradedPair<C> {
    pub fn recombine(&self) -> CarPolynomial<C> {
        self.even.add(&self.odd)
    }
}

impl<C: Coeff> Add for &CarPolynomial<C> {
    type Output = CarPolynomial<C>;
    fn add(self, rhs: Self) -> CarPolynomial<C> {
        CarPolynomial::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &CarPolynomial<C> {
    type Output = CarPolynomial<C>;
    fn sub(self, rhs: Self) -> CarPolynomial<C> {
        CarPolynomial::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &CarPolynomial<C> {
    type Output = CarPolynomial<C>;
    fn mul(self, rhs: Self) -> CarPolynomial<C> {
        self.multiply(rhs)
    }
}

impl<C: Coeff> Neg for &CarPolynomial<C> {
    type Output = CarPolynomial<C>;
    fn neg(self) -> CarPolynomial<C> {
        CarPolynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ratio;

    type P = CarPolynomial;

    fn c(i: i64) -> P {
        P::annihilator(i)
    }

    fn cd(i: i64) -> P {
        P::creator(i)
    }

    fn mono(cr: &[i64], an: &[i64]) -> Monomial {
        Monomial::from_sorted(cr, an).unwrap()
    }

    #[test]
    fn generators_and_adjoint() {
        assert_eq!(c(0).terms().next(), Some((&Monomial::annihilator(0), &Exact::one())));
        assert_eq!(c(3).adjoint(), cd(3));
        assert!((&c(5) * &c(5)).is_zero());
    }

    #[test]
    fn number_operator_is_idempotent() {
        let n1 = P::number_op(1);
        assert_eq!(n1, &cd(1) * &c(1));
        assert_eq!(&n1 * &n1, n1);
        assert!(n1.graded_commutator(&P::number_op(2)).unwrap().is_zero());
    }

    #[test]
    fn normal_ordering_examples() {
        assert_eq!(&c(0) * &cd(0), &P::identity() - &P::number_op(0));
        assert_eq!(&cd(2) * &cd(1), P::from_monomial(mono(&[1, 2], &[]), Exact::from_int(-1)));
        let lhs = &(&(&c(1) * &cd(2)) * &c(3)) * &cd(1);
        // c*_2 c_3 (1 - c*_1 c_1); reordering the quartic term costs two swaps
        // of c*_1 and one of c_1 past c_3, so it enters with a plus sign
        let expected = P::from_terms([
            (mono(&[2], &[3]), Exact::from_int(1)),
            (mono(&[1, 2], &[1, 3]), Exact::from_int(1)),
        ]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn adjoint_of_imaginary_word() {
        let i = Exact::imag_unit();
        let a = (&c(1) * &cd(2)).scale(&i);
        // (i c_1 c*_2)^* = -i c_2 c*_1 = i c*_1 c_2
        let expected = P::from_monomial(mono(&[1], &[2]), i.clone());
        assert_eq!(a.adjoint(), expected);
    }

    #[test]
    fn grade_split() {
        let pair = c(1).grade_parts();
        assert!(pair.even.is_zero());
        assert_eq!(pair.odd, c(1));
        let x = &P::identity() + &(&cd(1) * &c(2));
        let pair = x.grade_parts();
        assert_eq!(pair.even, x);
        assert!(pair.odd.is_zero());
        assert_eq!((&c(1) + &P::identity()).parity(), None);
    }

    #[test]
    fn graded_commutator_examples() {
        assert!(c(1).graded_commutator(&c(3)).unwrap().is_zero());
        assert_eq!(c(1).graded_commutator(&cd(1)).unwrap(), P::identity());
        let a = &(&c(1) * &cd(2)) * &c(3);
        let expected = &c(1) * &cd(2);
        assert_eq!(a.graded_commutator(&cd(3)).unwrap(), expected);
        let mixed = &c(1) + &P::identity();
        assert_eq!(mixed.graded_commutator(&c(1)), Err(AlgebraError::NonHomogeneousArgument));
    }

    #[test]
    fn shifts() {
        assert_eq!(c(0).shift(2), c(2));
        let a = &(&cd(1) * &c(4)).scale(&ratio(2, 3)) + &cd(-2);
        assert_eq!(a.shift(3).shift(-3), a);
    }

    #[test]
    fn supports() {
        assert_eq!(c(3).support().unwrap(), Some(Interval::new(3, 3)));
        assert_eq!(P::identity().support().unwrap(), None);
        assert_eq!(P::zero().support(), Err(AlgebraError::EmptySupport));
    }

    #[test]
    fn relabel_folds_colliding_sites() {
        // c_3 c*_0 with 3 -> -1 and 0 -> 0
        let a = &c(3) * &cd(0);
        let folded = a.relabel(|s| if s == 3 { -1 } else { s });
        assert_eq!(folded, &c(-1) * &cd(0));
        // c_1 c_3 with 3 -> 1 vanishes
        assert!((&c(1) * &c(3)).relabel(|s| if s == 3 { 1 } else { s }).is_zero());
    }
}
