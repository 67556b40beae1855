use std::path::PathBuf;

/// Every failure the command line reports, with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("oracle limit: {0}")]
    OracleLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Certificate(_) => 4,
            CliError::OracleLimit(_) => 5,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<crate::format::ParseError> for CliError {
    fn from(e: crate::format::ParseError) -> Self {
        if e.is_semantic() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Parse(e.to_string())
        }
    }
}

impl From<ecc_core::SolveError> for CliError {
    fn from(e: ecc_core::SolveError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ecc_core::SpecError> for CliError {
    fn from(e: ecc_core::SpecError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ecc_core::ThresholdError> for CliError {
    fn from(e: ecc_core::ThresholdError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ecc_core::GenError> for CliError {
    fn from(e: ecc_core::GenError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ecc_core::DualError> for CliError {
    fn from(e: ecc_core::DualError) -> Self {
        CliError::Certificate(e.to_string())
    }
}

impl From<ecc_core::OracleError> for CliError {
    fn from(e: ecc_core::OracleError) -> Self {
        match e {
            ecc_core::OracleError::LimitExceeded { .. } => CliError::OracleLimit(e.to_string()),
            ecc_core::OracleError::Spec(s) => s.into(),
        }
    }
}
