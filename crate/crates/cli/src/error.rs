use thiserror::Error;
use udw_harvest::quadrature::QuadError;
use udw_harvest::scenario::ConfigError;
use udw_harvest::HarvestError;

/// Everything the binary can fail with, mapped onto its exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    NonConvergence(String),
    #[error("regime rejected: {0}")]
    Regime(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::NonConvergence(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn io(context: impl std::fmt::Display, err: impl std::fmt::Display) -> Self {
        CliError::Io(format!("{context}: {err}"))
    }
}

impl From<HarvestError> for CliError {
    fn from(e: HarvestError) -> Self {
        match e {
            HarvestError::Quadrature(QuadError::InvalidSpec(msg)) => CliError::Usage(msg),
            HarvestError::Quadrature(q) => CliError::NonConvergence(q.to_string()),
            HarvestError::RegimeRejected(msg) => CliError::Regime(msg),
            HarvestError::Config(c) => CliError::Config(c),
            HarvestError::InvalidConfig(msg) => CliError::Usage(msg),
        }
    }
}
