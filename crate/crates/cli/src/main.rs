//! `nicolai`: verification suites, spectra and parameter scans for the
//! extended Nicolai model. See `nicolai --help` for flags and exit codes.

mod commands;
mod config;
mod error;
mod report;

use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use nicolai::coeff::FLOAT_PRUNE_TOL;
use nicolai::spectra::{ENERGY_IDENTITY_TOL, NUMBER_CONSERVATION_TOL, POSITIVITY_TOL, RESIDUAL_TOL};
use serde_json::{json, Value};

use config::{resolve, Args, Command, Resolved};
use error::CliError;

fn effective_config(command: Command, args: &Args) -> Value {
    json!({
        "command": command.name(),
        "g": args.g.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "M": args.m,
        "N": args.n_right,
        "boundary": args.boundary,
        "k": format!("{}..{}", args.k.start(), args.k.end()),
        "n": format!("{}..{}", args.n.start(), args.n.end()),
        "sizes": args.sizes,
        "width": args.width,
        "seed": args.seed,
        "float": args.float,
        "window-cap": args.window_cap,
        "out-dir": args.out_dir.display().to_string(),
    })
}

fn tolerances() -> Value {
    json!({
        "float_prune": FLOAT_PRUNE_TOL,
        "float_check": commands::FLOAT_CHECK_TOL,
        "positivity": POSITIVITY_TOL,
        "residual": RESIDUAL_TOL,
        "degeneracy": "1e-8 * max(1, |E0|), floor 1e-10",
        "energy_identity": ENERGY_IDENTITY_TOL,
        "number_conservation": NUMBER_CONSERVATION_TOL,
        "norm_relative": nicolai::fock::NormOptions::default().rel_tol,
    })
}

fn execute(resolved: Resolved) -> Result<bool, CliError> {
    let Resolved {
        args,
        config_file,
        config_entries,
    } = resolved;
    let command = args
        .command
        .ok_or_else(|| CliError::Config("no command given (positional or `command = ...` in --config)".into()))?;
    let start = Instant::now();
    let report = commands::run(command, &args)?;
    let wall = start.elapsed().as_secs_f64();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let metadata = json!({
        "tool": "nicolai",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "seed": args.seed,
        "config": {
            "file": config_file.map(|p| p.display().to_string()),
            "entries": config_entries,
            "effective": effective_config(command, &args),
        },
        "tolerances": tolerances(),
        "timestamp_unix": timestamp,
        "wall_time_s": wall,
    });
    let written = report::write_report(&args.out_dir, command.name(), &report, metadata)?;
    for path in &written {
        eprintln!("wrote {}", path.display());
    }
    println!(
        "{}: {} ({} path, {:.2} s)",
        command.name(),
        if report.passed { "all checks passed" } else { "CHECK FAILED" },
        if report.exact { "exact" } else { "float" },
        wall
    );
    Ok(report.passed)
}

fn main() -> ExitCode {
    let resolved = match resolve(std::env::args().collect()) {
        Ok(r) => r,
        Err(CliError::Usage(e)) => {
            // --help and --version exit 0, real usage errors exit 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match execute(resolved) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
