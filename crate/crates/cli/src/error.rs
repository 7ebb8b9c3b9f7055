use nicolai::car::AlgebraError;
use nicolai::fock::FockError;
use nicolai::model::ModelError;
use nicolai::spectra::SpectraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(clap::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("writing {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("empty input: {0}")]
    EmptyInput(String),
}

impl CliError {
    /// Exit status, as listed in the `--help` text.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Algebra(_) => 3,
            CliError::Model(_) => 4,
            CliError::Fock(_) => 5,
            CliError::Spectra(SpectraError::Model(_)) => 4,
            CliError::Spectra(SpectraError::Fock(_)) => 5,
            CliError::Spectra(_) => 6,
            CliError::Io { .. } => 7,
            CliError::EmptyInput(_) => 8,
        }
    }
}
