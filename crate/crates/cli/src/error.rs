use thiserror::Error;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] monogamy_lab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use monogamy_lab::Error as E;
        match self {
            CliError::Usage(_) => crate::EXIT_USAGE,
            CliError::Io(_) => crate::EXIT_IO,
            CliError::Library(E::Argument(_) | E::Label(_) | E::Capacity { .. } | E::Degenerate(_)) => {
                crate::EXIT_USAGE
            }
            CliError::Library(E::Numeric(_)) => crate::EXIT_FAIL,
        }
    }
}
