//! Ground-state spectroscopy of the local SUSY Hamiltonians.
//!
//! `H = QQ* + Q*Q` conserves total fermion number, so every solve works
//! block by block; blocks are independent and run through [`Execution`].

mod bound;
mod density;
pub mod lanczos;
mod sectors;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use thiserror::Error;

use crate::exec::Execution;
use crate::fock::{represent_on_region, FockError, FockVector, SparseMatrix, DEFAULT_WINDOW_CAP};
use crate::model::{region_hamiltonian, ModelError, Region};
use lanczos::{dense_eigenpairs, lowest_eigenpairs, LanczosOptions, Scalar};

pub use bound::{susy_bound_check, witness_norm_scan, BoundReport, NormRow, NormScan, ENERGY_IDENTITY_TOL};
pub use density::{density_region, energy_density_curve, DensityCurve, DensityRow};
pub use sectors::{embed, number_commutator_norm, sector_decompose, SectorBlock, Sectors, NUMBER_CONSERVATION_TOL};

/// Eigenvalues below this are a positivity violation.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Required `‖Hv - E₀v‖` for a reported ground vector.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("window of {len} sites exceeds the cap of {cap}")]
    WindowTooLarge { len: usize, cap: usize },
    #[error("eigensolver did not converge in sector {sector} (residual {residual:e})")]
    SolverNoConvergence { sector: usize, residual: f64 },
    #[error("operator does not conserve particle number (‖[H, N]‖ = {commutator_norm:e})")]
    NotNumberConserving { commutator_norm: f64 },
    #[error("coupling g must be nonzero")]
    ZeroCoupling,
    #[error("sizes must be even and at least 2, got {0}")]
    BadSize(usize),
    #[error("empty size list")]
    EmptySizes,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Dense,
    Iterative,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverKind::Dense => "dense",
            SolverKind::Iterative => "iterative",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Blocks up to this dimension are diagonalized densely.
    pub dense_max_dim: usize,
    pub lanczos: LanczosOptions,
    pub window_cap: usize,
    pub exec: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            dense_max_dim: 300,
            lanczos: LanczosOptions::default(),
            window_cap: DEFAULT_WINDOW_CAP,
            exec: Execution::default(),
        }
    }
}

impl SolverOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.lanczos.seed = seed;
        self
    }
}

/// `1e-8 · max(1, |E₀|)`, never below `1e-10`.
pub fn degeneracy_tol(e0: f64) -> f64 {
    (1e-8 * e0.abs().max(1.0)).max(1e-10)
}

/// Low-lying spectrum of one fermion-number block.
#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub particles: usize,
    pub dim: usize,
    /// Ascending; the full block spectrum when `solver` is dense.
    pub eigenvalues: Vec<f64>,
    pub ground_vector: Vec<Complex64>,
    pub residual: f64,
    pub solver: SolverKind,
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub ground_energy: f64,
    /// Eigenvalues within [`degeneracy_tol`] of the ground energy.
    pub degeneracy: usize,
    /// False when an iterative block could hide further degenerate copies.
    pub degeneracy_exact: bool,
    pub sector_energies: BTreeMap<usize, f64>,
    pub solver: SolverKind,
    /// `‖Hv - E₀v‖` for `ground_vector`.
    pub residual: f64,
    pub ground_vector: FockVector,
    pub sectors: Vec<SectorSpectrum>,
}

impl SpectrumResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.sectors
            .iter()
            .flat_map(|s| s.eigenvalues.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }
}

fn block_apply<T: Scalar>(m: &SparseMatrix, exec: Execution) -> impl Fn(&[T], &mut [T]) + '_ {
    move |x: &[T], y: &mut [T]| {
        exec.fill(y, |r| m.row(r).fold(T::zero(), |acc, (c, v)| acc + T::from_c64(v) * x[c]));
    }
}

fn solve_typed<T: Scalar>(block: &SectorBlock, opts: &SolverOptions) -> Result<SectorSpectrum, SpectraError> {
    let n = block.dim();
    let (eigenvalues, vectors, solver) = if n <= opts.dense_max_dim {
        let dense = DMatrix::<T>::from_fn(n, n, |r, c| T::from_c64(block.matrix.get(r, c)));
        let (vals, vecs) = dense_eigenpairs(dense);
        (vals, vecs, SolverKind::Dense)
    } else {
        // the inner matvec stays sequential; blocks already run in parallel
        let apply = block_apply::<T>(&block.matrix, Execution::Sequential);
        let want = opts.lanczos.block.max(1);
        let res = lowest_eigenpairs::<T>(n, want, apply, &opts.lanczos);
        if !res.converged {
            return Err(SpectraError::SolverNoConvergence {
                sector: block.particles,
                residual: res.residuals.iter().copied().fold(0.0, f64::max),
            });
        }
        (res.values, res.vectors, SolverKind::Iterative)
    };
    let ground: Vec<Complex64> = vectors[0].iter().map(|x| x.to_c64()).collect();
    let hv = block.matrix.apply(&ground, Execution::Sequential);
    let residual = hv
        .iter()
        .zip(&ground)
        .map(|(a, b)| (a - b * eigenvalues[0]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(SectorSpectrum {
        particles: block.particles,
        dim: n,
        eigenvalues,
        ground_vector: ground,
        residual,
        solver,
    })
}

/// Lowest eigenpairs of one block.
pub fn solve_sector(block: &SectorBlock, opts: &SolverOptions) -> Result<SectorSpectrum, SpectraError> {
    if block.matrix.is_real() {
        solve_typed::<f64>(block, opts)
    } else {
        solve_typed::<Complex64>(block, opts)
    }
}

/// Every eigenvalue of every block, by dense diagonalization.
pub fn full_sector_spectra(sectors: &Sectors, exec: Execution) -> Vec<(usize, Vec<f64>)> {
    exec.map(&sectors.blocks, |b| {
        let n = b.dim();
        let vals = if b.matrix.is_real() {
            dense_eigenpairs(DMatrix::<f64>::from_fn(n, n, |r, c| b.matrix.get(r, c).re)).0
        } else {
            dense_eigenpairs(b.matrix.to_dense()).0
        };
        (b.particles, vals)
    })
}

/// Ground data of an already-decomposed Hamiltonian.
pub fn ground_state_of(sectors: &Sectors, full: &SparseMatrix, opts: &SolverOptions) -> Result<SpectrumResult, SpectraError> {
    let solved = opts.exec.map(&sectors.blocks, |b| solve_sector(b, opts));
    let solved: Vec<SectorSpectrum> = solved.into_iter().collect::<Result<_, _>>()?;
    let (best, e0) = solved
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.eigenvalues[0]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sector");
    let tol = degeneracy_tol(e0);
    let degeneracy = solved
        .iter()
        .map(|s| s.eigenvalues.iter().filter(|&&v| v - e0 <= tol).count())
        .sum();
    // an iterative block whose every returned value is degenerate may hide more
    let degeneracy_exact = solved
        .iter()
        .all(|s| s.solver == SolverKind::Dense || s.eigenvalues.iter().any(|&v| v - e0 > tol));
    let solver = if solved.iter().any(|s| s.solver == SolverKind::Iterative) {
        SolverKind::Iterative
    } else {
        SolverKind::Dense
    };
    let dim = sectors.window.dim();
    let full_vec = embed(&sectors.blocks[best], dim, &solved[best].ground_vector);
    let ground_vector = FockVector::new(&sectors.window, full_vec)?;
    let hv = full.apply(&ground_vector.amplitudes, opts.exec);
    let residual = hv
        .iter()
        .zip(&ground_vector.amplitudes)
        .map(|(a, b)| (a - b * e0).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > RESIDUAL_TOL {
        return Err(SpectraError::SolverNoConvergence {
            sector: sectors.blocks[best].particles,
            residual,
        });
    }
    Ok(SpectrumResult {
        ground_energy: e0,
        degeneracy,
        degeneracy_exact,
        sector_energies: solved.iter().map(|s| (s.particles, s.eigenvalues[0])).collect(),
        solver,
        residual,
        ground_vector,
        sectors: solved,
    })
}

/// Exact-diagonalization ground data of `H̃(g)` (periodic) or `Ĥ(g)` (free)
/// on `region`.
pub fn ground_state(g: f64, region: &Region, opts: &SolverOptions) -> Result<SpectrumResult, SpectraError> {
    if region.len() > opts.window_cap {
        return Err(SpectraError::WindowTooLarge {
            len: region.len(),
            cap: opts.window_cap,
        });
    }
    let h = region_hamiltonian(&Complex64::new(g, 0.0), region);
    let op = represent_on_region(&h, region)?;
    let sectors = sector_decompose(&op)?;
    ground_state_of(&sectors, &op.matrix, opts)
}
