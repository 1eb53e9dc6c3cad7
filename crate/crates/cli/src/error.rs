use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] interwalk::Error),

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error("i/o: {0}")]
    Io(String),

    /// The run wrote its results but stopped short, e.g. a truncated curve.
    #[error("{message}")]
    Partial { code: &'static str, exit: i32, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Spec(_) => "invalid_spec",
            CliError::Io(_) => "io",
            CliError::Partial { code, .. } => code,
        }
    }

    /// 2 invalid spec, 3 infeasible schedule, 4 memory cap, 5 numerical
    /// failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Spec(_) | CliError::Io(_) => 2,
            CliError::Partial { exit, .. } => *exit,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord { error: self.code(), message: self.to_string(), exit_code: self.exit_code() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

/// The line printed to stderr on failure.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
}
