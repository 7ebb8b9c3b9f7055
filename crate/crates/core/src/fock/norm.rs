//! Operator norms: dense SVD for small windows, power iteration on `A*A`
//! above [`DENSE_NORM_MAX_SITES`].

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FockError, FockOperator, SparseMatrix, Window};
use crate::exec::Execution;

/// Largest window handled by the dense method under [`NormMethod::Auto`].
pub const DENSE_NORM_MAX_SITES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NormMethod {
    DenseSvd,
    Iterative,
    /// Dense up to [`DENSE_NORM_MAX_SITES`], iterative above.
    Auto,
}

#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    pub method: NormMethod,
    pub rel_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            method: NormMethod::Auto,
            rel_tol: 1e-10,
            max_iter: 200_000,
            seed: 0x5eed,
            exec: Execution::default(),
        }
    }
}

/// Largest singular value of `op`.
pub fn operator_norm(op: &FockOperator, method: NormMethod) -> Result<f64, FockError> {
    operator_norm_with(
        op,
        &NormOptions {
            method,
            ..NormOptions::default()
        },
    )
}

pub fn operator_norm_with(op: &FockOperator, opts: &NormOptions) -> Result<f64, FockError> {
    if op.matrix.nnz() == 0 {
        return Ok(0.0);
    }
    let dense = match opts.method {
        NormMethod::DenseSvd => true,
        NormMethod::Iterative => false,
        NormMethod::Auto => op.window.len() <= DENSE_NORM_MAX_SITES,
    };
    if dense {
        Ok(dense_norm(&op.matrix))
    } else {
        power_norm(&op.matrix, opts)
    }
}

/// Change in particle number if it is the same for every stored entry.
fn uniform_charge(m: &SparseMatrix) -> Option<isize> {
    let mut charges = m
        .triplets()
        .map(|(r, c, _)| Window::particle_number(r) as isize - Window::particle_number(c) as isize);
    let first = charges.next()?;
    charges.all(|q| q == first).then_some(first)
}

fn dense_norm(m: &SparseMatrix) -> f64 {
    let Some(q) = uniform_charge(m) else {
        return block_norm(m);
    };
    // A maps sector n to sector n+q, so ‖A‖ is the largest block norm
    let modes = m.cols().trailing_zeros() as usize;
    let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); modes + 1];
    for s in 0..m.cols() {
        sectors[Window::particle_number(s)].push(s);
    }
    (0..=modes)
        .filter_map(|n| {
            let target = n as isize + q;
            (0..=modes as isize).contains(&target).then(|| {
                let block = m.submatrix(&sectors[target as usize], &sectors[n]);
                if block.nnz() == 0 {
                    0.0
                } else {
                    block_norm(&block)
                }
            })
        })
        .fold(0.0, f64::max)
}

fn block_norm(m: &SparseMatrix) -> f64 {
    if m.is_real() {
        let dense = DMatrix::<f64>::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).re);
        dense.singular_values().max()
    } else {
        m.to_dense().singular_values().max()
    }
}

fn power_norm(m: &SparseMatrix, opts: &NormOptions) -> Result<f64, FockError> {
    let n = m.cols();
    let adj = m.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut v);
    let mut sigma_prev = f64::NAN;
    let mut sigma = 0.0;
    for it in 0..opts.max_iter {
        let w = m.apply(&v, opts.exec);
        let lambda: f64 = w.iter().map(|x| x.norm_sqr()).sum();
        if lambda == 0.0 {
            // start vector in the kernel; perturb deterministically
            v.iter_mut().enumerate().for_each(|(i, x)| *x += Complex64::new(1.0 / (i + 1) as f64, 0.0));
            normalize(&mut v);
            continue;
        }
        let u = adj.apply(&w, opts.exec);
        let residual = u
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        sigma = lambda.sqrt();
        if it > 0 && (sigma - sigma_prev).abs() <= opts.rel_tol * sigma && residual <= opts.rel_tol.sqrt() * lambda {
            return Ok(sigma);
        }
        sigma_prev = sigma;
        v = u;
        normalize(&mut v);
    }
    Err(FockError::IterationDivergence {
        estimate: sigma,
        iterations: opts.max_iter,
    })
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    } else if let Some(first) = v.first_mut() {
        *first = Complex64::new(1.0, 0.0);
    }
}
