use infoclust_core::Error as CoreError;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable input, malformed JSON, or a document that does not match the schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// Well-formed input whose statistics do not define an entropy function.
    #[error("invalid source: {0}")]
    InvalidSource(String),

    #[error("{0}")]
    Convergence(CoreError),

    /// Some fast result disagreed with its brute-force reference.
    #[error("validation failed: {0}")]
    Disagreement(String),

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Output(_) => 1,
            CliError::Schema(_) => 2,
            CliError::InvalidSource(_) => 3,
            CliError::Convergence(_) => 4,
            CliError::Disagreement(_) => 5,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidSource(msg) => CliError::InvalidSource(msg),
            CoreError::Convergence { .. } => CliError::Convergence(e),
            CoreError::Domain(msg) | CoreError::Unsupported(msg) => CliError::Schema(msg),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
