//! Finite-volume form of the SUSY-breaking estimate.
//!
//! For any unit vector `Ω`, `δ_g(o(n)) = g·1` and
//! `δ_g(o(n)) = Q o(n) + o(n) Q` with `Q = Q̃(g)_{[-3, 2(n+2)]}` give
//!
//! ```text
//! |g| = |⟨Ω, (Q o + o Q) Ω⟩| ≤ (‖Q*Ω‖ + ‖QΩ‖) · ‖o(n)‖
//! ```
//!
//! and on a ground vector `‖Q*Ω‖² + ‖QΩ‖² = E₀`, hence
//! `E₀ ≥ g² / (2‖o(n)‖²)`.

use num::complex::Complex64;

use super::{ground_state, SolverOptions, SpectraError};
use crate::car::Interval;
use crate::fock::{operator_norm_with, represent, represent_on_region, FockVector, NormMethod, NormOptions, Window};
use crate::model::{averaged_witness, supercharge, witness_operator, Region, SuperchargeSpec, WitnessSpec};

/// Allowed mismatch in `‖Q*Ω‖² + ‖QΩ‖² = E₀`.
pub const ENERGY_IDENTITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundReport {
    pub g: f64,
    pub n: usize,
    pub sites: usize,
    pub e0: f64,
    /// `‖Q*Ω‖`
    pub a: f64,
    /// `‖QΩ‖`
    pub b: f64,
    pub norm_o: f64,
    /// `⟨Ω, (Q o(n) + o(n) Q) Ω⟩`, which should equal `g`.
    pub delta_expectation_re: f64,
    pub delta_expectation_im: f64,
    /// `|a² + b² - E₀|`
    pub identity_residual: f64,
    /// `(a + b)·‖o(n)‖ - |g|`
    pub chain_slack: f64,
    /// `g² / (2‖o(n)‖²)`
    pub energy_bound: f64,
    pub identity_ok: bool,
    pub chain_ok: bool,
    pub energy_ok: bool,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.identity_ok && self.chain_ok && self.energy_ok
    }
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Norm of a polynomial on the tight window of its support.
fn witness_norm(g: f64, n: usize, opts: &NormOptions) -> Result<f64, SpectraError> {
    let o = averaged_witness(&Complex64::new(g, 0.0), n)?;
    let support = o.support().map_err(crate::model::ModelError::from)?.expect("o(n) is not scalar");
    let op = represent(&o, &Window::interval(support)?)?;
    Ok(operator_norm_with(&op, opts)?)
}

pub fn susy_bound_check(
    g: f64,
    n: usize,
    solver: &SolverOptions,
    norms: &NormOptions,
) -> Result<BoundReport, SpectraError> {
    if g == 0.0 {
        return Err(SpectraError::ZeroCoupling);
    }
    let region = Region::periodic(4, 2 * (n as i64 + 2))?;
    let ground = ground_state(g, &region, solver)?;
    let omega: &FockVector = &ground.ground_vector;
    let exec = solver.exec;

    let gc = Complex64::new(g, 0.0);
    let q = supercharge(&SuperchargeSpec { g: gc, region });
    let q_op = represent_on_region(&q, &region)?;
    let qd_op = q_op.adjoint();
    let q_omega = q_op.matrix.apply(&omega.amplitudes, exec);
    let qd_omega = qd_op.matrix.apply(&omega.amplitudes, exec);
    let a = vec_norm(&qd_omega);
    let b = vec_norm(&q_omega);

    let o = averaged_witness(&gc, n)?;
    let o_op = represent_on_region(&o, &region)?;
    let o_omega = o_op.matrix.apply(&omega.amplitudes, exec);
    let anti: Vec<Complex64> = q_op
        .matrix
        .apply(&o_omega, exec)
        .iter()
        .zip(o_op.matrix.apply(&q_omega, exec))
        .map(|(x, y)| x + y)
        .collect();
    let delta = omega.amplitudes.iter().zip(&anti).map(|(w, x)| w.conj() * x).sum::<Complex64>();

    let norm_o = witness_norm(g, n, norms)?;
    let e0 = ground.ground_energy;
    let identity_residual = (a * a + b * b - e0).abs();
    let rhs = (a + b) * norm_o;
    let energy_bound = g * g / (2.0 * norm_o * norm_o);
    Ok(BoundReport {
        g,
        n,
        sites: region.len(),
        e0,
        a,
        b,
        norm_o,
        delta_expectation_re: delta.re,
        delta_expectation_im: delta.im,
        identity_residual,
        chain_slack: rhs - g.abs(),
        energy_bound,
        identity_ok: identity_residual <= ENERGY_IDENTITY_TOL,
        chain_ok: g.abs() <= rhs,
        energy_ok: e0 >= energy_bound,
    })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NormRow {
    pub n: usize,
    pub sites: usize,
    pub norm: f64,
    /// `√n · ‖o(n)‖`, flat when the `1/√n` law is saturated.
    pub sqrt_n_norm: f64,
    /// `C / √n`
    pub bound: f64,
    /// `C/√n - ‖o(n)‖`
    pub slack: f64,
    pub method: NormMethod,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NormScan {
    pub g: f64,
    pub o1_norm: f64,
    /// `C² = 10‖O_1‖²`
    pub c_squared: f64,
    pub rows: Vec<NormRow>,
}

impl NormScan {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.slack >= 0.0)
    }
}

/// `‖o(n)‖` against `C/√n` with `C² = 10‖O_1‖²`. `‖O_1‖` always comes
/// from a dense SVD.
pub fn witness_norm_scan(g: f64, ns: &[usize], opts: &NormOptions) -> Result<NormScan, SpectraError> {
    if g == 0.0 {
        return Err(SpectraError::ZeroCoupling);
    }
    let o1 = witness_operator(&WitnessSpec {
        g: Complex64::new(g, 0.0),
        k: 1,
    })?;
    let o1_op = represent(&o1, &Window::interval(Interval::new(-1, 3))?)?;
    let o1_norm = operator_norm_with(
        &o1_op,
        &NormOptions {
            method: NormMethod::DenseSvd,
            ..*opts
        },
    )?;
    let c_squared = 10.0 * o1_norm * o1_norm;
    let rows = ns
        .iter()
        .map(|&n| {
            let sites = 2 * n + 3;
            let method = match opts.method {
                NormMethod::Auto if sites <= crate::fock::DENSE_NORM_MAX_SITES => NormMethod::DenseSvd,
                NormMethod::Auto => NormMethod::Iterative,
                m => m,
            };
            let norm = witness_norm(g, n, &NormOptions { method, ..*opts })?;
            let bound = (c_squared / n as f64).sqrt();
            Ok(NormRow {
                n,
                sites,
                norm,
                sqrt_n_norm: (n as f64).sqrt() * norm,
                bound,
                slack: bound - norm,
                method,
            })
        })
        .collect::<Result<Vec<_>, SpectraError>>()?;
    Ok(NormScan {
        g,
        o1_norm,
        c_squared,
        rows,
    })
}
