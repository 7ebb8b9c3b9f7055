//! Ground-state energy per site across system sizes.

use super::{ground_state, SolverKind, SolverOptions, SpectraError};
use crate::model::{Boundary, Region};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DensityRow {
    pub g: f64,
    /// Nominal size `L = M + N`; energies are divided by this.
    pub size: usize,
    /// Sites in the Fock window (`L` periodic, `L + 1` free).
    pub sites: usize,
    pub boundary: Boundary,
    pub e0: f64,
    /// `E₀ / L`.
    pub e: f64,
    pub degeneracy: usize,
    pub residual: f64,
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DensityCurve {
    pub rows: Vec<DensityRow>,
    /// Intercept of a least-squares fit `e(L) = e_∞ + b/L`. Diagnostic only;
    /// `None` with fewer than two distinct sizes.
    pub fit_intercept: Option<f64>,
}

/// Region of nominal size `L` centred on the origin: `M = N = L/2` when
/// `L/2` is even, otherwise `M = L/2 - 1`, `N = L/2 + 1`.
pub fn density_region(size: usize, boundary: Boundary) -> Result<Region, SpectraError> {
    if size < 2 || size % 2 == 1 {
        return Err(SpectraError::BadSize(size));
    }
    let half = (size / 2) as i64;
    let m = if half % 2 == 0 { half } else { half - 1 };
    let n = size as i64 - m;
    Ok(Region::with_boundary(m, n, boundary)?)
}

pub fn energy_density_curve(
    g: f64,
    sizes: &[usize],
    boundary: Boundary,
    opts: &SolverOptions,
) -> Result<DensityCurve, SpectraError> {
    if sizes.is_empty() {
        return Err(SpectraError::EmptySizes);
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let region = density_region(size, boundary)?;
        let res = ground_state(g, &region, opts)?;
        rows.push(DensityRow {
            g,
            size,
            sites: region.len(),
            boundary,
            e0: res.ground_energy,
            e: res.ground_energy / size as f64,
            degeneracy: res.degeneracy,
            residual: res.residual,
            solver: res.solver,
        });
    }
    let fit_intercept = inverse_size_fit(&rows);
    Ok(DensityCurve { rows, fit_intercept })
}

fn inverse_size_fit(rows: &[DensityRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (1.0 / r.size as f64, r.e)).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(my - sxy / sxx * mx)
}
