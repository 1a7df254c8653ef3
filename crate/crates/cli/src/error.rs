use monodigraph::Error;
use thiserror::Error;

/// Failures surfaced by the command line, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Hypothesis(String),
    #[error("{0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Hypothesis(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let msg = e.to_string();
        match e {
            Error::FieldTooLarge { .. } => CliError::Cap(msg),
            Error::GcdHypothesisFails
            | Error::HypothesisFails(_)
            | Error::EqualityCase
            | Error::KTooSmall { .. }
            | Error::NotExists { .. }
            | Error::CharacteristicDividesN { .. }
            | Error::NotPrimeField(_) => CliError::Hypothesis(msg),
            Error::CertificateRejected(_) => CliError::VerificationFailed(msg),
            _ => CliError::BadInput(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::BadInput(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
