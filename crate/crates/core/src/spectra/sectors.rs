//! Block decomposition by total fermion number.

use num::complex::Complex64;

use super::SpectraError;
use crate::fock::{FockOperator, SparseMatrix, Window};

/// Commutators with the number operator larger than this are rejected.
pub const NUMBER_CONSERVATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SectorBlock {
    /// Eigenvalue of `N_total` on this block.
    pub particles: usize,
    /// Basis states of the block, ascending.
    pub states: Vec<usize>,
    pub matrix: SparseMatrix,
}

impl SectorBlock {
    pub fn dim(&self) -> usize {
        self.states.len()
    }
}

#[derive(Debug, Clone)]
pub struct Sectors {
    pub window: Window,
    pub blocks: Vec<SectorBlock>,
}

impl Sectors {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(SectorBlock::dim).collect()
    }

    /// Direct sum of the blocks as a full matrix.
    pub fn reassemble(&self) -> SparseMatrix {
        let dim = self.window.dim();
        let triplets = self
            .blocks
            .iter()
            .flat_map(|b| b.matrix.triplets().map(|(r, c, v)| (b.states[r], b.states[c], v)))
            .collect();
        SparseMatrix::from_triplets(dim, dim, triplets)
    }
}

/// Frobenius norm of `[H, N_total]`, an upper bound on its operator norm.
/// Entry `(r, c)` of the commutator is `H_rc (n_c - n_r)`.
pub fn number_commutator_norm(h: &SparseMatrix) -> f64 {
    h.triplets()
        .map(|(r, c, v)| {
            let d = Window::particle_number(c) as f64 - Window::particle_number(r) as f64;
            (v * d).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Splits a number-conserving operator into its fermion-number blocks.
pub fn sector_decompose(h: &FockOperator) -> Result<Sectors, SpectraError> {
    let comm = number_commutator_norm(&h.matrix);
    if comm > NUMBER_CONSERVATION_TOL {
        return Err(SpectraError::NotNumberConserving { commutator_norm: comm });
    }
    let modes = h.window.len();
    let mut states: Vec<Vec<usize>> = vec![Vec::new(); modes + 1];
    for s in 0..h.window.dim() {
        states[Window::particle_number(s)].push(s);
    }
    let blocks = states
        .into_iter()
        .enumerate()
        .map(|(particles, states)| SectorBlock {
            particles,
            matrix: h.matrix.submatrix(&states, &states),
            states,
        })
        .collect();
    Ok(Sectors {
        window: h.window.clone(),
        blocks,
    })
}

/// Embeds a block vector into the full Fock space.
pub fn embed(block: &SectorBlock, dim: usize, local: &[Complex64]) -> Vec<Complex64> {
    let mut full = vec![Complex64::new(0.0, 0.0); dim];
    for (&s, &a) in block.states.iter().zip(local) {
        full[s] = a;
    }
    full
}
