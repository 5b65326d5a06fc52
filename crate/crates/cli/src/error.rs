use fimhom_core::error::Error as CoreError;

/// Errors surfaced by the harness, each with a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input, unknown suite, bad configuration.
    #[error("{0}")]
    Usage(String),
    /// A module failed validation or an internal consistency check broke.
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Usage(m) => CliError::Usage(m),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
