//! Occupation-number representation of CAR polynomials on a finite window.
//!
//! Basis states are bitstrings with window slot 0 (the lowest site) as the
//! least significant bit. `c_i` and `c*_i` carry the sign
//! `(-1)^{#occupied slots below slot(i)}`.

mod norm;
mod sparse;

use std::fmt::Write as _;

use num::complex::Complex64;
use thiserror::Error;

use crate::car::{CarPolynomial, Interval, SiteIndex};
use crate::coeff::Coeff;
use crate::exec::Execution;
use crate::model::Region;

pub use norm::{operator_norm, operator_norm_with, NormMethod, NormOptions, DENSE_NORM_MAX_SITES};
pub use sparse::SparseMatrix;

/// Default cap on window size.
pub const DEFAULT_WINDOW_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("site {site} lies outside the window")]
    SupportOutsideWindow { site: SiteIndex },
    #[error("window of {len} sites exceeds the cap of {cap}")]
    WindowTooLarge { len: usize, cap: usize },
    #[error("window sites must be distinct and ascending")]
    UnsortedWindow,
    #[error("operator and vector live on different windows")]
    WindowMismatch,
    #[error("vector length {len} does not match Fock dimension {dim}")]
    DimensionMismatch { len: usize, dim: usize },
    #[error("norm iteration did not converge after {iterations} steps (best estimate {estimate})")]
    IterationDivergence { estimate: f64, iterations: usize },
}

/// Ordered list of lattice sites spanned by a Fock space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    sites: Vec<SiteIndex>,
}

impl Window {
    pub fn new(sites: Vec<SiteIndex>) -> Result<Self, FockError> {
        Self::with_cap(sites, DEFAULT_WINDOW_CAP)
    }

    pub fn with_cap(sites: Vec<SiteIndex>, cap: usize) -> Result<Self, FockError> {
        if !sites.windows(2).all(|w| w[0] < w[1]) {
            return Err(FockError::UnsortedWindow);
        }
        if sites.len() > cap {
            return Err(FockError::WindowTooLarge { len: sites.len(), cap });
        }
        Ok(Self { sites })
    }

    pub fn interval(iv: Interval) -> Result<Self, FockError> {
        Self::new(iv.sites().collect())
    }

    pub fn from_region(region: &Region) -> Result<Self, FockError> {
        Self::interval(region.interval())
    }

    pub fn sites(&self) -> &[SiteIndex] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn dim(&self) -> usize {
        1usize << self.sites.len()
    }

    pub fn slot(&self, site: SiteIndex) -> Option<usize> {
        self.sites.binary_search(&site).ok()
    }

    /// Total fermion number of each basis state.
    pub fn particle_number(state: usize) -> usize {
        state.count_ones() as usize
    }
}

/// A polynomial represented on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub window: Window,
    pub matrix: SparseMatrix,
    pub hermitian_hint: bool,
}

impl FockOperator {
    pub fn identity(window: &Window) -> Self {
        Self {
            matrix: SparseMatrix::identity(window.dim()),
            window: window.clone(),
            hermitian_hint: true,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            window: self.window.clone(),
            matrix: self.matrix.adjoint(),
            hermitian_hint: self.hermitian_hint,
        }
    }

    pub fn mul(&self, other: &FockOperator, exec: Execution) -> Result<Self, FockError> {
        if self.window != other.window {
            return Err(FockError::WindowMismatch);
        }
        Ok(Self {
            window: self.window.clone(),
            matrix: self.matrix.mul(&other.matrix, exec),
            hermitian_hint: false,
        })
    }

    pub fn apply(&self, v: &FockVector, exec: Execution) -> Result<FockVector, FockError> {
        if self.window != v.window {
            return Err(FockError::WindowMismatch);
        }
        Ok(FockVector {
            window: v.window.clone(),
            amplitudes: self.matrix.apply(&v.amplitudes, exec),
        })
    }

    /// Coordinate text: one `row col re im` line per stored entry.
    pub fn to_coo_text(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.matrix.triplets() {
            writeln!(out, "{r} {c} {:e} {:e}", v.re, v.im).expect("writing to a String");
        }
        out
    }
}

/// A vector in the Fock space of a window.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    pub window: Window,
    pub amplitudes: Vec<Complex64>,
}

impl FockVector {
    /// Normalizes `amplitudes`.
    pub fn new(window: &Window, amplitudes: Vec<Complex64>) -> Result<Self, FockError> {
        if amplitudes.len() != window.dim() {
            return Err(FockError::DimensionMismatch {
                len: amplitudes.len(),
                dim: window.dim(),
            });
        }
        let mut v = Self {
            window: window.clone(),
            amplitudes,
        };
        let n = v.norm();
        v.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(v)
    }

    /// Basis state with the given occupation bitstring.
    pub fn basis(window: &Window, state: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); window.dim()];
        amplitudes[state] = Complex64::new(1.0, 0.0);
        Self {
            window: window.clone(),
            amplitudes,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Image of a basis state under a normal-ordered monomial given as slot
/// lists: `None` if annihilated, else `(target, negative_sign)`.
fn act(state: usize, creations: &[usize], annihilations: &[usize]) -> Option<(usize, bool)> {
    let mut s = state;
    let mut negative = false;
    for &slot in annihilations.iter().rev() {
        let bit = 1usize << slot;
        if s & bit == 0 {
            return None;
        }
        negative ^= (s & (bit - 1)).count_ones() % 2 == 1;
        s &= !bit;
    }
    for &slot in creations.iter().rev() {
        let bit = 1usize << slot;
        if s & bit != 0 {
            return None;
        }
        negative ^= (s & (bit - 1)).count_ones() % 2 == 1;
        s |= bit;
    }
    Some((s, negative))
}

/// Represents `a` as a sparse matrix on the Fock space of `window`.
pub fn represent<C: Coeff>(a: &CarPolynomial<C>, window: &Window) -> Result<FockOperator, FockError> {
    represent_with(a, window, Execution::default())
}

pub fn represent_with<C: Coeff>(
    a: &CarPolynomial<C>,
    window: &Window,
    exec: Execution,
) -> Result<FockOperator, FockError> {
    let slots = |sites: &[SiteIndex]| -> Result<Vec<usize>, FockError> {
        sites
            .iter()
            .map(|&s| window.slot(s).ok_or(FockError::SupportOutsideWindow { site: s }))
            .collect()
    };
    let mut terms = Vec::with_capacity(a.len());
    for (m, c) in a.terms() {
        terms.push((slots(m.creations())?, slots(m.annihilations())?, c.to_c64()));
    }
    let dim = window.dim();
    // column-wise: each monomial maps a basis state to at most one state
    let columns = exec.map_range(dim, |state| {
        let mut out: Vec<(usize, Complex64)> = Vec::new();
        for (cr, an, c) in &terms {
            if let Some((target, negative)) = act(state, cr, an) {
                out.push((target, if negative { -*c } else { *c }));
            }
        }
        out
    });
    let triplets = columns
        .into_iter()
        .enumerate()
        .flat_map(|(col, entries)| entries.into_iter().map(move |(row, v)| (row, col, v)))
        .collect();
    Ok(FockOperator {
        window: window.clone(),
        matrix: SparseMatrix::from_triplets(dim, dim, triplets),
        hermitian_hint: a.is_self_adjoint(),
    })
}

/// Represents an operator built on a periodic region after folding every
/// site into the region, so wraparound terms carry the sign string across
/// the seam.
pub fn represent_on_region<C: Coeff>(a: &CarPolynomial<C>, region: &Region) -> Result<FockOperator, FockError> {
    let window = Window::from_region(region)?;
    represent(&a.relabel(|s| region.fold(s)), &window)
}

/// `⟨v, A v⟩`.
pub fn expectation(op: &FockOperator, v: &FockVector) -> Result<Complex64, FockError> {
    let av = op.apply(v, Execution::default())?;
    Ok(v.inner(&av))
}
