//! Block Lanczos for the lowest eigenpairs of a Hermitian operator.
//!
//! Every new Krylov block is reorthogonalized against the whole basis
//! (classical Gram-Schmidt, applied twice), so the projected matrix is
//! formed directly as `V* A V`. When the basis reaches `max_basis` the
//! lowest half of the Ritz vectors is kept (thick restart) and the
//! iteration continues from the residuals of the wanted pairs.

use nalgebra::{ComplexField, DMatrix};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Scalar field of an eigenproblem: `f64` for real symmetric blocks,
/// `Complex64` for Hermitian ones.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Send + Sync {
    fn from_c64(c: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    fn random(rng: &mut ChaCha8Rng) -> Self;
}

impl Scalar for f64 {
    fn from_c64(c: Complex64) -> Self {
        c.re
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn random(rng: &mut ChaCha8Rng) -> Self {
        rng.random::<f64>() - 0.5
    }
}

impl Scalar for Complex64 {
    fn from_c64(c: Complex64) -> Self {
        c
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    pub block: usize,
    pub max_basis: usize,
    /// Absolute residual `‖A y - θ y‖` required for convergence.
    pub tol: f64,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            block: 4,
            max_basis: 160,
            tol: 1e-9,
            max_restarts: 60,
            seed: 0x1a2c,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RitzPairs<T> {
    /// Ascending.
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<T>>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub matvecs: usize,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.conjugate() * *y)
}

fn norm<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.modulus_squared()).sum::<f64>().sqrt()
}

fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * *xi);
}

struct Basis<T> {
    v: Vec<Vec<T>>,
    av: Vec<Vec<T>>,
    /// Upper triangle of `V* A V`, row-major by column index.
    t: Vec<Vec<T>>,
}

impl<T: Scalar> Basis<T> {
    fn new() -> Self {
        Self {
            v: Vec::new(),
            av: Vec::new(),
            t: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.v.len()
    }

    /// Appends a vector already orthonormal to the basis together with its
    /// known image `ax`.
    fn push_known(&mut self, x: Vec<T>, ax: Vec<T>) {
        let col: Vec<T> = self.v.iter().map(|q| dot(q, &ax)).chain(std::iter::once(dot(&x, &ax))).collect();
        self.t.push(col);
        self.v.push(x);
        self.av.push(ax);
    }

    /// Orthogonalizes `x` against the basis and appends it unless it is
    /// numerically dependent. Returns whether it was kept.
    fn push(&mut self, mut x: Vec<T>, apply: &impl Fn(&[T], &mut [T]), matvecs: &mut usize) -> bool {
        let start = norm(&x);
        if start == 0.0 || !start.is_finite() {
            return false;
        }
        for _ in 0..2 {
            for q in &self.v {
                let proj = dot(q, &x);
                axpy(-proj, q, &mut x);
            }
        }
        let nx = norm(&x);
        if nx <= 1e-10 * start {
            return false;
        }
        let inv = T::from_real(1.0 / nx);
        x.iter_mut().for_each(|e| *e *= inv);
        let mut ax = vec![T::zero(); x.len()];
        apply(&x, &mut ax);
        *matvecs += 1;
        self.push_known(x, ax);
        true
    }

    fn projected(&self) -> DMatrix<T> {
        let m = self.len();
        let mut t = DMatrix::zeros(m, m);
        for (j, col) in self.t.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                t[(i, j)] = x;
                t[(j, i)] = x.conjugate();
            }
            t[(j, j)] = T::from_real(col[j].real());
        }
        t
    }
}

/// Rayleigh-Ritz on the current basis: `(θ, y, A y)` for the lowest `k`.
fn ritz<T: Scalar>(basis: &Basis<T>, k: usize) -> Vec<(f64, Vec<T>, Vec<T>)> {
    let n = basis.v[0].len();
    let eig = basis.projected().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order
        .into_iter()
        .take(k)
        .map(|idx| {
            let s = eig.eigenvectors.column(idx);
            let mut y = vec![T::zero(); n];
            let mut ay = vec![T::zero(); n];
            for (j, &sj) in s.iter().enumerate() {
                axpy(sj, &basis.v[j], &mut y);
                axpy(sj, &basis.av[j], &mut ay);
            }
            (eig.eigenvalues[idx], y, ay)
        })
        .collect()
}

/// Lowest `want` eigenpairs of the Hermitian operator `apply` on `C^n`.
pub fn lowest_eigenpairs<T: Scalar>(
    n: usize,
    want: usize,
    apply: impl Fn(&[T], &mut [T]),
    opts: &LanczosOptions,
) -> RitzPairs<T> {
    let block = opts.block.max(want).min(n).max(1);
    let max_basis = opts.max_basis.max(3 * block).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut basis = Basis::new();
    let mut matvecs = 0;
    let mut frontier: Vec<usize> = Vec::new();
    for _ in 0..block {
        let x: Vec<T> = (0..n).map(|_| T::random(&mut rng)).collect();
        if basis.push(x, &apply, &mut matvecs) {
            frontier.push(basis.len() - 1);
        }
    }
    let mut restarts = 0;
    let mut step = 0usize;
    loop {
        step += 1;
        // grow the Krylov space by one block
        let mut exhausted = frontier.is_empty();
        if !exhausted && basis.len() < max_basis {
            let candidates: Vec<Vec<T>> = frontier.iter().map(|&j| basis.av[j].clone()).collect();
            frontier.clear();
            for x in candidates {
                if basis.len() >= max_basis {
                    break;
                }
                if basis.push(x, &apply, &mut matvecs) {
                    frontier.push(basis.len() - 1);
                }
            }
            exhausted = frontier.is_empty();
        }
        let full = basis.len() >= max_basis;
        if !(full || exhausted || step % 2 == 0) {
            continue;
        }
        let pairs = ritz(&basis, block);
        let residuals: Vec<f64> = pairs
            .iter()
            .map(|(theta, y, ay)| {
                ay.iter()
                    .zip(y)
                    .map(|(a, b)| (*a - *b * T::from_real(*theta)).modulus_squared())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        let take = want.min(pairs.len());
        let converged = residuals[..take].iter().all(|&r| r <= opts.tol);
        if converged || exhausted || (full && restarts >= opts.max_restarts) {
            let (values, vectors): (Vec<f64>, Vec<Vec<T>>) =
                pairs.into_iter().take(take).map(|(t, y, _)| (t, y)).unzip();
            return RitzPairs {
                values,
                vectors,
                residuals: residuals[..take].to_vec(),
                converged: converged || exhausted,
                matvecs,
            };
        }
        if full {
            // thick restart: keep the lowest half of the Ritz vectors with
            // their images and continue from the residuals of the wanted ones
            restarts += 1;
            let keep = (max_basis / 2).max(block);
            let kept = ritz(&basis, keep);
            let mut fresh = Basis::new();
            for (_, y, ay) in &kept {
                fresh.push_known(y.clone(), ay.clone());
            }
            frontier.clear();
            for (theta, y, ay) in kept.into_iter().take(block) {
                let mut r = ay;
                axpy(T::from_real(-theta), &y, &mut r);
                if fresh.push(r, &apply, &mut matvecs) {
                    frontier.push(fresh.len() - 1);
                }
            }
            basis = fresh;
        }
    }
}

/// All eigenpairs of a dense Hermitian matrix, ascending.
pub fn dense_eigenpairs<T: Scalar>(m: DMatrix<T>) -> (Vec<f64>, Vec<Vec<T>>) {
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order.iter().map(|&i| eig.eigenvectors.column(i).iter().copied().collect()).collect();
    (values, vectors)
}
