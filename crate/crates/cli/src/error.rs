use parahoric_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for exceeded caps, 4 for violated preconditions,
    /// 5 for I/O failures, 1 for failed oracle checks.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::CapExceeded { .. } => 3,
                CoreError::Precondition(_) => 4,
                _ => 2,
            },
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 4,
            CliError::Io { .. } => 5,
            CliError::CheckFailed(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
