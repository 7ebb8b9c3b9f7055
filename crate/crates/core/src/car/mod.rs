//! Exact algebra of the canonical anticommutation relations over the
//! integer lattice.
//!
//! Every element is stored in normal order: creation operators with
//! ascending sites, followed by annihilation operators with ascending
//! sites. Products are normal-ordered by [`Monomial::mul_generator`], which
//! right-multiplies one generator at a time using
//! `{c*_i, c_j} = δ_ij` and `{c_i, c_j} = {c*_i, c*_j} = 0`.

mod monomial;
mod polynomial;
pub mod rewrite;
mod text;

use thiserror::Error;

pub use monomial::{GenKind, Generator, Monomial, SignedMonomial};
pub use polynomial::{CarPolynomial, GradedPair, Parity};

/// Lattice coordinate.
pub type SiteIndex = i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("graded commutator needs a homogeneous first argument")]
    NonHomogeneousArgument,
    #[error("the zero polynomial has no support")]
    EmptySupport,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lo: SiteIndex,
    pub hi: SiteIndex,
}

impl Interval {
    pub fn new(lo: SiteIndex, hi: SiteIndex) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}] is empty");
        Self { lo, hi }
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, site: SiteIndex) -> bool {
        self.lo <= site && site <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn sites(&self) -> impl Iterator<Item = SiteIndex> {
        self.lo..=self.hi
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
