//! Command-line flags and the flat `key = value` configuration file.
//!
//! A config file holds one `key = value` pair per line, with keys equal to
//! the long flag names (`g`, `M`, `sizes`, ...) plus an optional `command`.
//! Entries for flags that were also given on the command line are dropped,
//! so the command line wins (list flags such as `g` are replaced, not
//! appended to).

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::{ArgAction, ArgMatches, CommandFactory, FromArgMatches, Parser, ValueEnum};
use nicolai::coeff::parse_rational;
use nicolai::model::Boundary;
use num::BigRational;
use serde::Serialize;

use crate::error::CliError;

pub const EXIT_CODES: &str = "\
Exit codes:
  0  every check passed
  1  a check failed (see the report files)
  2  invalid flags or configuration file
  3  algebra error
  4  model error (region, coupling)
  5  Fock representation error (window, norm iteration)
  6  spectra error (solver, window cap, sizes)
  7  I/O error writing reports
  8  empty input (nothing to compute or plot)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Q(g)^2 = 0 for the truncated supercharge.
    VerifyNilpotent,
    /// δ_g(O_k) = g·1 for the witness operators.
    VerifyWitness,
    /// δ*_g δ_g + δ_g δ*_g = [H, ·] on all monomials of a given width.
    VerifySusyRelation,
    /// Ground energy, degeneracy and sector minima on one region.
    Spectrum,
    /// Ground energy per site across sizes.
    DensityScan,
    /// ‖o(n)‖ against C/√n.
    NormScan,
    /// The finite-volume SUSY-breaking bound chain.
    BoundCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyNilpotent => "verify-nilpotent",
            Command::VerifyWitness => "verify-witness",
            Command::VerifySusyRelation => "verify-susy-relation",
            Command::Spectrum => "spectrum",
            Command::DensityScan => "density-scan",
            Command::NormScan => "norm-scan",
            Command::BoundCheck => "bound-check",
        }
    }
}

/// Parses `a..b` (inclusive) or a single integer.
fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: i64 = b.parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_coupling(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Parser)]
#[command(name = "nicolai", version, about = "Exact checks and spectra for the extended Nicolai model", after_help = EXIT_CODES)]
#[command(args_override_self = true)]
pub struct Args {
    /// Suite to run (may also come from `command = ...` in the config file).
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// Couplings: comma-separated rationals or decimals, e.g. `1,-1/2,0.25`.
    #[arg(long, value_delimiter = ',', value_parser = parse_coupling, allow_hyphen_values = true)]
    pub g: Vec<BigRational>,

    /// Left extent M of the region [-M+1, N] (even).
    #[arg(long = "M", default_value_t = 4)]
    pub m: i64,

    /// Right extent N of the region [-M+1, N] (even).
    #[arg(long = "N", default_value_t = 4)]
    pub n_right: i64,

    #[arg(long, default_value_t = Boundary::Periodic, value_parser = clap::value_parser!(Boundary))]
    pub boundary: Boundary,

    /// Witness indices `a..b` for verify-witness.
    #[arg(long, default_value = "0..3", value_parser = parse_range, allow_hyphen_values = true)]
    pub k: RangeInclusive<i64>,

    /// Averaging lengths `a..b` for norm-scan and bound-check.
    #[arg(long, default_value = "1..3", value_parser = parse_range)]
    pub n: RangeInclusive<i64>,

    /// Even system sizes L for density-scan.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,

    /// Monomial support width for verify-susy-relation.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..=8))]
    pub width: i64,

    /// Seed for the iterative solvers' start vectors.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Use floating-point coefficients instead of exact rationals.
    #[arg(long, action = ArgAction::Set, default_value_t = false, default_missing_value = "true", num_args = 0..=1)]
    pub float: bool,

    /// Largest Fock window in sites.
    #[arg(long, default_value_t = nicolai::fock::DEFAULT_WINDOW_CAP)]
    pub window_cap: usize,

    /// Directory for CSV, JSON and plot files.
    #[arg(long, env = "NICOLAI_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    /// Flat `key = value` file; command-line flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// One `key = value` entry exactly as written in the config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
}

/// Keys accepted in a config file.
const KNOWN_KEYS: &[&str] = &[
    "command", "g", "M", "N", "boundary", "k", "n", "sizes", "width", "seed", "float", "window-cap", "out-dir",
];

pub fn parse_config_text(text: &str) -> Result<Vec<ConfigEntry>, CliError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", i + 1)))?;
        let key = key.trim().replace('_', "-");
        let key = match key.as_str() {
            "m" => "M".to_string(),
            _ => key,
        };
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("line {}: unknown key {key:?}", i + 1)));
        }
        entries.push(ConfigEntry {
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(entries)
}

pub struct Resolved {
    pub args: Args,
    pub config_file: Option<PathBuf>,
    pub config_entries: Vec<ConfigEntry>,
}

/// Clap argument id for a config key.
fn arg_id(key: &str) -> String {
    match key {
        "M" => "m".into(),
        "N" => "n_right".into(),
        _ => key.replace('-', "_"),
    }
}

fn set_on_command_line(matches: &ArgMatches, key: &str) -> bool {
    matches.value_source(&arg_id(key)) == Some(ValueSource::CommandLine)
}

fn read_config(path: &Path) -> Result<Vec<ConfigEntry>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Parses `argv`, merging in the config file if one is named.
pub fn resolve(argv: Vec<String>) -> Result<Resolved, CliError> {
    let matches = Args::command().try_get_matches_from(&argv).map_err(CliError::Usage)?;
    let first = Args::from_arg_matches(&matches).map_err(CliError::Usage)?;
    let Some(path) = first.config.clone() else {
        return Ok(Resolved {
            args: first,
            config_file: None,
            config_entries: Vec::new(),
        });
    };
    let entries = read_config(&path)?;
    let mut merged = vec![argv[0].clone()];
    for e in entries.iter().filter(|e| !set_on_command_line(&matches, &e.key)) {
        if e.key == "command" {
            merged.push(e.value.clone());
        } else {
            merged.push(format!("--{}={}", e.key, e.value));
        }
    }
    merged.extend(argv.into_iter().skip(1));
    let args = Args::try_parse_from(&merged).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Resolved {
        args,
        config_file: Some(path),
        config_entries: entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("nicolai").chain(s.split_whitespace()).map(String::from).collect()
    }

    #[test]
    fn ranges_and_couplings() {
        assert_eq!(parse_range("0..3").unwrap(), 0..=3);
        assert_eq!(parse_range("-2..=1").unwrap(), -2..=1);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("3..1").is_err());
        let a = resolve(argv("verify-witness --g 1,-1/2,0.25 --k -1..2")).unwrap().args;
        assert_eq!(a.g.len(), 3);
        assert_eq!(a.k, -1..=2);
        assert_eq!(a.command, Some(Command::VerifyWitness));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let entries = parse_config_text("g = 1/2  # coupling\n\nM=6\nsizes = 4,6\n").unwrap();
        assert_eq!(entries[0].value, "1/2");
        assert_eq!(entries[1].key, "M");
        assert!(matches!(parse_config_text("gauge = 1"), Err(CliError::Config(_))));
        assert!(matches!(parse_config_text("no equals sign"), Err(CliError::Config(_))));
    }

    #[test]
    fn command_line_lists_replace_config_lists() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "command = density-scan\ng = 1/2, 2\nsizes = 4,6,8\n").unwrap();
        let r = resolve(argv(&format!("--config {} --g 1", path.display()))).unwrap();
        assert_eq!(r.args.command, Some(Command::DensityScan));
        assert_eq!(r.args.g, vec![BigRational::from_integer(1.into())]);
        assert_eq!(r.args.sizes, vec![4, 6, 8]);
    }
}
