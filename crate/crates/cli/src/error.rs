use thiserror::Error;

/// Failures surfaced by the command-line front end, each with a fixed exit
/// code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON, bad rational token, or unparsable argument.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates the instance contract: dimensions,
    /// surjectivity, empty fibers, generator parameters.
    #[error("invalid instance: {0}")]
    Invalid(String),

    /// An exact self-check failed after solving.
    #[error("internal verification failure: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<affprox::Error> for CliError {
    fn from(err: affprox::Error) -> Self {
        use affprox::Error as E;
        match err {
            E::Internal(_) | E::SandwichInfeasible(_) => CliError::Verification(err.to_string()),
            _ => CliError::Invalid(err.to_string()),
        }
    }
}
