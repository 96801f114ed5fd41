use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error(transparent)]
    Lib(#[from] extfd::Error),
}

impl CliError {
    /// 2 for usage, parse and precondition errors; 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                extfd::Error::NoConvergence { .. }
                | extfd::Error::DivergenceSuspected { .. }
                | extfd::Error::RootCondition(_) => 3,
                _ => 2,
            },
        }
    }
}
