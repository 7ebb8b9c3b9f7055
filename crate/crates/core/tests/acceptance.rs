//! Acceptance criteria. Prints one `[PASS]` / `[FAIL]` line per criterion
//! and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nicolai::car::Monomial;
use nicolai::coeff::ratio;
use nicolai::fock::{expectation, represent, FockVector, NormOptions, Window};
use nicolai::model::{
    hamiltonian_derivation, superderivation, superderivation_in, superderivation_region, supercharge,
    susy_laplacian, witness_operator, Boundary, Conjugation, Region, SuperchargeSpec, WitnessSpec,
};
use nicolai::spectra::{density_region, ground_state, susy_bound_check, witness_norm_scan, SolverOptions};
use nicolai::{Coeff, Exact, Execution, Interval};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `‖O_1‖` at `g = 1`, measured once by dense SVD on `[-1, 3]`.
const O1_NORM_G1: f64 = 3.214319743377535;
const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn run(id: &str, title: &str, budget: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let passed = outcome.passed && in_time;
    println!(
        "[{}] {id} {title}: {} ({:.2} s, budget {} s{})",
        if passed { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", exceeded" },
    );
    passed
}

/// Lists the failing cases, or nothing when there are none.
fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn random_poly(rng: &mut ChaCha8Rng, lo: i64, hi: i64, terms: usize) -> P {
    let width = (hi - lo + 1) as u32;
    P::from_terms((0..terms).map(|_| {
        let cr = mask_sites(rng.random_range(0..1u32 << width), lo, hi);
        let an = mask_sites(rng.random_range(0..1u32 << width), lo, hi);
        let re = ratio(rng.random_range(-5..=5), rng.random_range(1..=4));
        let im = ratio(rng.random_range(-5..=5), rng.random_range(1..=4)).times(&Exact::imag_unit());
        (mono(&cr, &an), re.plus(&im))
    }))
}

fn ac1() -> Outcome {
    let sizes = [2, 4, 6, 8];
    let gs = [ratio(0, 1), ratio(1, 2), ratio(-1, 2), ratio(1, 1), ratio(-1, 1), ratio(2, 1), ratio(-2, 1)];
    let mut cases = 0;
    let mut bad = Vec::new();
    for &m in &sizes {
        for &n in &sizes {
            for g in &gs {
                for region in [Region::periodic(m, n).unwrap(), Region::free(m, n).unwrap()] {
                    let q = supercharge(&SuperchargeSpec { g: g.clone(), region });
                    cases += 1;
                    if !(&q * &q).is_zero() {
                        bad.push(format!("{region} g={}", g.format()));
                    }
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("Q̃(g)² = Q̂(g)² = 0 exactly in {}/{cases} cases{}", cases - bad.len(), failures(&bad)),
    }
}

fn ac2() -> Outcome {
    let gs = [ratio(1, 1), ratio(-1, 1), ratio(2, 3), ratio(7, 1)];
    let mut cases = 0;
    let mut bad = Vec::new();
    for g in &gs {
        for k in 0..=3 {
            let o = witness_operator(&WitnessSpec { g: g.clone(), k }).unwrap();
            let base = superderivation_region(&o.support().unwrap().unwrap());
            let mut regions = vec![base];
            for extra in [2, 4] {
                regions.push(Region::new(base.left() - extra, base.right() + extra, Boundary::Periodic).unwrap());
                regions.push(Region::new(base.left() - extra, base.right() + extra + 1, Boundary::Free).unwrap());
            }
            for region in regions {
                cases += 1;
                let d = superderivation_in(g, &o, &region, Conjugation::Plain).unwrap();
                if !d.sub(&P::scalar(g.clone())).is_zero() {
                    bad.push(format!("k={k} g={} {region}", g.format()));
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("δ_g(O_k) - g·1 = 0 exactly in {}/{cases} (k, g, region) cases{}", cases - bad.len(), failures(&bad)),
    }
}

/// Every monomial of width at most 6, up to translation by two sites:
/// supports inside `[0, 5]`, plus those inside `[1, 6]` that touch site 6.
fn width_six_monomials() -> Vec<Monomial> {
    let mut out = all_monomials(0, 5);
    out.extend(all_monomials(1, 6).into_iter().filter(|m| m.sites().contains(&6)));
    out
}

fn ac3() -> Outcome {
    let monomials = width_six_monomials();
    let mut bad = 0;
    for g in [ratio(0, 1), ratio(1, 1)] {
        let mismatches = Execution::default().map(&monomials, |m| {
            let a = P::from_monomial(m.clone(), Exact::one());
            susy_laplacian(&g, &a) != hamiltonian_derivation(&g, &a)
        });
        bad += mismatches.into_iter().filter(|&x| x).count();
    }
    Outcome {
        passed: bad == 0,
        detail: format!(
            "d_g(A) = [H̃, A] exactly for {} monomials × g ∈ {{0, 1}}, {bad} mismatches",
            monomials.len()
        ),
    }
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let window = Window::interval(Interval::new(0, 7)).unwrap();
    let exec = Execution::default();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = random_poly(&mut rng, 0, 7, 6);
        let b = random_poly(&mut rng, 0, 7, 6);
        let ab = represent(&(&a * &b), &window).unwrap().matrix;
        let prod = represent(&a, &window).unwrap().matrix.mul(&represent(&b, &window).unwrap().matrix, exec);
        worst = worst.max(ab.max_abs_diff(&prod));
    }
    Outcome {
        passed: worst <= 1e-12,
        detail: format!("100 random pairs on 8 sites, max |π(ab) - π(a)π(b)| = {worst:.2e} ≤ 1e-12"),
    }
}

fn ac5() -> Outcome {
    let opts = SolverOptions::default().with_seed(SEED);
    let mut ok = true;
    let mut parts = Vec::new();
    for size in [8, 10, 12] {
        let region = density_region(size, Boundary::Periodic).unwrap();
        let mut energies = Vec::new();
        for g in [0.1, 0.5, 1.0] {
            let e0 = ground_state(g, &region, &opts).unwrap().ground_energy;
            ok &= e0 > 1e-6;
            energies.push(format!("{e0:.4e}"));
        }
        let free = ground_state(0.0, &region, &opts).unwrap();
        ok &= free.ground_energy.abs() <= 1e-10 && free.degeneracy >= 1;
        parts.push(format!(
            "L={size}: E0(0.1, 0.5, 1) = ({}), E0(0) = {:.1e} with {}{} zero modes",
            energies.join(", "),
            free.ground_energy,
            if free.degeneracy_exact { "" } else { "≥" },
            free.degeneracy
        ));
    }
    Outcome {
        passed: ok,
        detail: parts.join("; "),
    }
}

fn ac6() -> Outcome {
    let scan = witness_norm_scan(1.0, &[1, 2, 3, 4, 5], &NormOptions::default()).unwrap();
    let pinned = (scan.o1_norm - O1_NORM_G1).abs() <= 1e-12;
    let min_slack = scan.rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let rows: Vec<String> = scan
        .rows
        .iter()
        .map(|r| format!("n={} ‖o‖={:.6} C/√n={:.6}", r.n, r.norm, r.bound))
        .collect();
    Outcome {
        passed: pinned && min_slack >= 1e-10,
        detail: format!(
            "‖O_1‖ = {:.15} (pinned {O1_NORM_G1}), C² = {:.6}; {}; min slack {min_slack:.6}",
            scan.o1_norm,
            scan.c_squared,
            rows.join(", ")
        ),
    }
}

fn ac7() -> Outcome {
    let solver = SolverOptions::default().with_seed(SEED);
    let mut ok = true;
    let mut parts = Vec::new();
    for g in [0.5, 1.0] {
        for n in 1..=3 {
            let r = susy_bound_check(g, n, &solver, &NormOptions::default()).unwrap();
            ok &= r.passed();
            parts.push(format!(
                "g={g} n={n}: |a²+b²-E0|={:.1e}, (a+b)‖o‖-|g|={:.4}, E0={:.4}≥{:.4}",
                r.identity_residual, r.chain_slack, r.e0, r.energy_bound
            ));
        }
    }
    Outcome {
        passed: ok,
        detail: parts.join("; "),
    }
}

/// The infinite-volume statements rest on the witness identity being
/// state independent; check it on random vector states.
fn ac8(prerequisites: bool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for (g, gf) in [(ratio(1, 1), 1.0), (ratio(2, 3), 2.0 / 3.0)] {
        for n in 1..=3 {
            let o = nicolai::model::averaged_witness(&g, n).unwrap();
            let delta = superderivation(&g, &o);
            let window = Window::interval(Interval::new(-1, 2 * n as i64 + 1)).unwrap();
            let op = represent(&delta, &window).unwrap();
            for _ in 0..4 {
                let amps = (0..window.dim())
                    .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect();
                let v = FockVector::new(&window, amps).unwrap();
                let e = expectation(&op, &v).unwrap();
                worst = worst.max((e - Complex64::new(gf, 0.0)).norm());
            }
        }
    }
    Outcome {
        passed: prerequisites && worst <= 1e-12,
        detail: format!(
            "covered by AC2, AC6, AC7 ({}); ω(δ_g(o(n))) = g in random vector states, max error {worst:.1e}",
            if prerequisites { "all pass" } else { "one failed" }
        ),
    }
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut bad = 0;
    for i in 0..50 {
        let width = rng.random_range(1..=6);
        let lo = rng.random_range(-4..=4);
        let a = random_poly(&mut rng, lo, lo + width - 1, 4);
        let g = if i % 2 == 0 { ratio(1, 1) } else { ratio(-3, 4) };
        for k in [2, -2] {
            if superderivation(&g, &a.shift(k)) != superderivation(&g, &a).shift(k) {
                bad += 1;
            }
        }
    }
    Outcome {
        passed: bad == 0,
        detail: format!("δ_g∘σ_±2 = σ_±2∘δ_g exactly on 50 random polynomials of width ≤ 6, {bad} mismatches"),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut results = Vec::new();
    results.push(run("AC1", "symbolic nilpotency", secs(5), ac1));
    let ac2_ok = run("AC2", "witness identity", secs(5), ac2);
    results.push(ac2_ok);
    results.push(run("AC3", "SUSY relation", secs(30), ac3));
    results.push(run("AC4", "representation homomorphism", secs(10), ac4));
    results.push(run("AC5", "finite-volume SUSY breaking", secs(120), ac5));
    let ac6_ok = run("AC6", "norm decay", secs(180), ac6);
    results.push(ac6_ok);
    let ac7_ok = run("AC7", "bound chain", secs(300), ac7);
    results.push(ac7_ok);
    results.push(run("AC8", "infinite-volume statements via finite skeleton", secs(10), || {
        ac8(ac2_ok && ac6_ok && ac7_ok)
    }));
    results.push(run("AC9", "translation covariance", secs(10), ac9));
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
