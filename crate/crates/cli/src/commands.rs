//! The suites behind each subcommand.

use nicolai::car::Monomial;
use nicolai::fock::{NormOptions, DENSE_NORM_MAX_SITES};
use nicolai::model::{
    hamiltonian_derivation, superderivation, supercharge, susy_laplacian, witness_operator, Boundary, Region,
    SuperchargeSpec, WitnessSpec,
};
use nicolai::spectra::{
    energy_density_curve, ground_state, susy_bound_check, witness_norm_scan, SolverOptions, POSITIVITY_TOL,
    RESIDUAL_TOL,
};
use nicolai::{CarPolynomial, Coeff, Exact, Execution, SiteIndex};
use num::complex::Complex64;
use num::{BigRational, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::config::{Args, Command};
use crate::error::CliError;
use crate::report::{PlotData, Report};

/// Largest coefficient tolerated as zero on the float path.
pub const FLOAT_CHECK_TOL: f64 = 1e-12;

/// `1/2` → `1_2`, `-3` → `m3`, for file names.
fn coupling_tag(g: &BigRational) -> String {
    g.to_string().replace('-', "m").replace('/', "_")
}

fn to_f64(g: &BigRational) -> f64 {
    g.to_f64().expect("rationals convert to f64")
}

fn couplings(args: &Args) -> Result<&[BigRational], CliError> {
    if args.g.is_empty() {
        return Err(CliError::EmptyInput("no couplings given (--g)".into()));
    }
    Ok(&args.g)
}

/// Zero test for a result that should vanish: literal zero on the exact
/// path, `max |coeff| ≤ FLOAT_CHECK_TOL` on the float path.
fn vanishes<C: Coeff>(p: &CarPolynomial<C>) -> bool {
    if C::EXACT {
        p.is_zero()
    } else {
        p.max_abs_coeff() <= FLOAT_CHECK_TOL
    }
}

fn solver_options(args: &Args) -> SolverOptions {
    SolverOptions {
        window_cap: args.window_cap,
        ..SolverOptions::default().with_seed(args.seed)
    }
}

fn norm_options(args: &Args) -> NormOptions {
    NormOptions {
        seed: args.seed,
        ..NormOptions::default()
    }
}

fn averaging_lengths(args: &Args) -> Result<Vec<usize>, CliError> {
    if *args.n.start() < 1 {
        return Err(CliError::Config(format!("--n must start at 1 or above, got {}", args.n.start())));
    }
    Ok(args.n.clone().map(|n| n as usize).collect())
}

#[derive(Serialize)]
struct NilpotentRow {
    g: String,
    m: i64,
    n: i64,
    boundary: Boundary,
    sites: usize,
    q_terms: usize,
    q2_terms: usize,
    q2_max_abs: f64,
    exact: bool,
    pass: bool,
}

fn verify_nilpotent_with<C: Coeff>(args: &Args) -> Result<Vec<NilpotentRow>, CliError> {
    let region = Region::with_boundary(args.m, args.n_right, args.boundary)?;
    couplings(args)?
        .iter()
        .map(|g| {
            let q = supercharge(&SuperchargeSpec {
                g: C::from_rational(g),
                region,
            });
            let q2 = &q * &q;
            Ok(NilpotentRow {
                g: g.to_string(),
                m: args.m,
                n: args.n_right,
                boundary: args.boundary,
                sites: region.len(),
                q_terms: q.len(),
                q2_terms: q2.len(),
                q2_max_abs: q2.max_abs_coeff(),
                exact: C::EXACT,
                pass: vanishes(&q2),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct WitnessRow {
    g: String,
    k: i64,
    support_lo: SiteIndex,
    support_hi: SiteIndex,
    residual_terms: usize,
    residual_max_abs: f64,
    exact: bool,
    pass: bool,
}

fn verify_witness_with<C: Coeff>(args: &Args) -> Result<Vec<WitnessRow>, CliError> {
    let mut rows = Vec::new();
    for g in couplings(args)? {
        let gc = C::from_rational(g);
        for k in args.k.clone() {
            let o = witness_operator(&WitnessSpec { g: gc.clone(), k })?;
            let support = o.support()?.expect("witness operators are not scalars");
            let residual = superderivation(&gc, &o).sub(&CarPolynomial::scalar(gc.clone()));
            rows.push(WitnessRow {
                g: g.to_string(),
                k,
                support_lo: support.lo,
                support_hi: support.hi,
                residual_terms: residual.len(),
                residual_max_abs: residual.max_abs_coeff(),
                exact: C::EXACT,
                pass: vanishes(&residual),
            });
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct SusyRelationRow {
    g: String,
    width: i64,
    monomials: usize,
    mismatches: usize,
    max_abs_diff: f64,
    exact: bool,
    pass: bool,
}

fn monomials_of_width(width: i64) -> Vec<Monomial> {
    let sites = |mask: u32| -> Vec<SiteIndex> { (0..width).filter(|&s| mask >> s & 1 == 1).collect() };
    let all = 1u32 << width;
    (0..all)
        .flat_map(|cr| (0..all).map(move |an| (cr, an)))
        .map(|(cr, an)| Monomial::from_sorted(&sites(cr), &sites(an)).expect("ascending"))
        .collect()
}

fn verify_susy_relation_with<C: Coeff>(args: &Args) -> Result<Vec<SusyRelationRow>, CliError> {
    let monomials = monomials_of_width(args.width);
    couplings(args)?
        .iter()
        .map(|g| {
            let gc = C::from_rational(g);
            let diffs = Execution::default().map(&monomials, |m| {
                let a = CarPolynomial::from_monomial(m.clone(), C::one());
                let diff = susy_laplacian(&gc, &a).sub(&hamiltonian_derivation(&gc, &a));
                (vanishes(&diff), diff.max_abs_coeff())
            });
            let mismatches = diffs.iter().filter(|d| !d.0).count();
            Ok(SusyRelationRow {
                g: g.to_string(),
                width: args.width,
                monomials: monomials.len(),
                mismatches,
                max_abs_diff: diffs.iter().map(|d| d.1).fold(0.0, f64::max),
                exact: C::EXACT,
                pass: mismatches == 0,
            })
        })
        .collect()
}

fn exact_or_float<R>(
    args: &Args,
    exact: impl FnOnce(&Args) -> Result<Vec<R>, CliError>,
    float: impl FnOnce(&Args) -> Result<Vec<R>, CliError>,
) -> Result<Vec<R>, CliError> {
    if args.float {
        float(args)
    } else {
        exact(args)
    }
}

fn all_pass<R>(rows: &[R], pass: impl Fn(&R) -> bool) -> bool {
    rows.iter().all(pass)
}

#[derive(Serialize)]
struct SpectrumRow {
    g: String,
    m: i64,
    n: i64,
    boundary: Boundary,
    sites: usize,
    e0: f64,
    /// `E₀ / (M + N)`
    e: f64,
    degeneracy: usize,
    degeneracy_exact: bool,
    residual: f64,
    solver: String,
    pass: bool,
}

fn spectrum(args: &Args) -> Result<Report, CliError> {
    let region = Region::with_boundary(args.m, args.n_right, args.boundary)?;
    let opts = solver_options(args);
    let mut rows = Vec::new();
    let mut sectors = serde_json::Map::new();
    for g in couplings(args)? {
        let res = ground_state(to_f64(g), &region, &opts)?;
        let pass = res.min_eigenvalue() >= -POSITIVITY_TOL && res.residual <= RESIDUAL_TOL;
        sectors.insert(g.to_string(), json!(res.sector_energies));
        rows.push(SpectrumRow {
            g: g.to_string(),
            m: args.m,
            n: args.n_right,
            boundary: args.boundary,
            sites: region.len(),
            e0: res.ground_energy,
            e: res.ground_energy / (args.m + args.n_right) as f64,
            degeneracy: res.degeneracy,
            degeneracy_exact: res.degeneracy_exact,
            residual: res.residual,
            solver: res.solver.to_string(),
            pass,
        });
    }
    let mut report = Report::from_rows(&rows, all_pass(&rows, |r| r.pass), false)?;
    report.summary = json!({ "sector_energies": sectors });
    Ok(report)
}

#[derive(Serialize)]
struct DensityCsvRow {
    g: String,
    size: usize,
    sites: usize,
    boundary: Boundary,
    e0: f64,
    e: f64,
    degeneracy: usize,
    residual: f64,
    solver: String,
    pass: bool,
}

fn density_scan(args: &Args) -> Result<Report, CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::EmptyInput("no sizes given (--sizes)".into()));
    }
    let opts = solver_options(args);
    let mut rows = Vec::new();
    let mut plots = Vec::new();
    let mut fits = serde_json::Map::new();
    for g in couplings(args)? {
        let curve = energy_density_curve(to_f64(g), &args.sizes, args.boundary, &opts)?;
        fits.insert(g.to_string(), json!(curve.fit_intercept));
        plots.push(PlotData {
            file_name: format!("density-scan_g{}.dat", coupling_tag(g)),
            columns: vec!["L", "e"],
            rows: curve.rows.iter().map(|r| vec![r.size as f64, r.e]).collect(),
        });
        rows.extend(curve.rows.into_iter().map(|r| DensityCsvRow {
            g: g.to_string(),
            size: r.size,
            sites: r.sites,
            boundary: r.boundary,
            e0: r.e0,
            e: r.e,
            degeneracy: r.degeneracy,
            residual: r.residual,
            solver: r.solver.to_string(),
            pass: r.e >= -POSITIVITY_TOL && r.residual <= RESIDUAL_TOL,
        }));
    }
    let mut report = Report::from_rows(&rows, all_pass(&rows, |r| r.pass), false)?;
    report.summary = json!({ "fit_intercept_diagnostic": fits });
    report.plots = plots;
    Ok(report)
}

#[derive(Serialize)]
struct NormCsvRow {
    g: String,
    n: usize,
    sites: usize,
    norm: f64,
    sqrt_n_norm: f64,
    bound: f64,
    slack: f64,
    method: String,
    pass: bool,
}

fn norm_scan(args: &Args) -> Result<Report, CliError> {
    let ns = averaging_lengths(args)?;
    let mut rows = Vec::new();
    let mut plots = Vec::new();
    let mut constants = serde_json::Map::new();
    for g in couplings(args)? {
        let scan = witness_norm_scan(to_f64(g), &ns, &norm_options(args))?;
        constants.insert(g.to_string(), json!({ "o1_norm": scan.o1_norm, "c_squared": scan.c_squared }));
        plots.push(PlotData {
            file_name: format!("norm-scan_g{}.dat", coupling_tag(g)),
            columns: vec!["n", "norm", "sqrt_n_norm"],
            rows: scan.rows.iter().map(|r| vec![r.n as f64, r.norm, r.sqrt_n_norm]).collect(),
        });
        rows.extend(scan.rows.into_iter().map(|r| NormCsvRow {
            g: g.to_string(),
            n: r.n,
            sites: r.sites,
            norm: r.norm,
            sqrt_n_norm: r.sqrt_n_norm,
            bound: r.bound,
            slack: r.slack,
            method: format!("{:?}", r.method),
            pass: r.slack >= 0.0,
        }));
    }
    let mut report = Report::from_rows(&rows, all_pass(&rows, |r| r.pass), false)?;
    report.summary = json!({ "constants": constants, "dense_norm_max_sites": DENSE_NORM_MAX_SITES });
    report.plots = plots;
    Ok(report)
}

#[derive(Serialize)]
struct BoundCsvRow {
    g: String,
    n: usize,
    sites: usize,
    e0: f64,
    a: f64,
    b: f64,
    norm_o: f64,
    delta_expectation: f64,
    identity_residual: f64,
    chain_slack: f64,
    energy_bound: f64,
    identity_ok: bool,
    chain_ok: bool,
    energy_ok: bool,
    pass: bool,
}

fn bound_check(args: &Args) -> Result<Report, CliError> {
    let ns = averaging_lengths(args)?;
    let opts = solver_options(args);
    let mut rows = Vec::new();
    for g in couplings(args)? {
        for &n in &ns {
            let r = susy_bound_check(to_f64(g), n, &opts, &norm_options(args))?;
            rows.push(BoundCsvRow {
                g: g.to_string(),
                n,
                sites: r.sites,
                e0: r.e0,
                a: r.a,
                b: r.b,
                norm_o: r.norm_o,
                delta_expectation: r.delta_expectation_re,
                identity_residual: r.identity_residual,
                chain_slack: r.chain_slack,
                energy_bound: r.energy_bound,
                identity_ok: r.identity_ok,
                chain_ok: r.chain_ok,
                energy_ok: r.energy_ok,
                pass: r.passed(),
            });
        }
    }
    Report::from_rows(&rows, all_pass(&rows, |r| r.pass), false)
}

pub fn run(command: Command, args: &Args) -> Result<Report, CliError> {
    let exact = !args.float;
    match command {
        Command::VerifyNilpotent => {
            let rows = exact_or_float(args, verify_nilpotent_with::<Exact>, verify_nilpotent_with::<Complex64>)?;
            Report::from_rows(&rows, all_pass(&rows, |r| r.pass), exact)
        }
        Command::VerifyWitness => {
            let rows = exact_or_float(args, verify_witness_with::<Exact>, verify_witness_with::<Complex64>)?;
            Report::from_rows(&rows, all_pass(&rows, |r| r.pass), exact)
        }
        Command::VerifySusyRelation => {
            let rows = exact_or_float(
                args,
                verify_susy_relation_with::<Exact>,
                verify_susy_relation_with::<Complex64>,
            )?;
            Report::from_rows(&rows, all_pass(&rows, |r| r.pass), exact)
        }
        Command::Spectrum => spectrum(args),
        Command::DensityScan => density_scan(args),
        Command::NormScan => norm_scan(args),
        Command::BoundCheck => bound_check(args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupling_tags_are_file_safe() {
        let g: BigRational = "-1/2".parse().unwrap();
        assert_eq!(coupling_tag(&g), "m1_2");
    }

    #[test]
    fn width_enumeration() {
        assert_eq!(monomials_of_width(2).len(), 16);
        assert!(monomials_of_width(1).contains(&Monomial::identity()));
    }
}
