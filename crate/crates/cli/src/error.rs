use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] quatpw::Error),

    /// A verification ran to completion and found a failure; the report has
    /// already been written.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use quatpw::Error as E;
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Failed(_) => 4,
            CliError::Core(e) => match e {
                E::Truncation(_) => 3,
                E::Invariant(_) => 4,
                E::Domain(_) => 5,
                E::Io(_) => 1,
                E::InvalidArgument(_)
                | E::EmptyGrid
                | E::AsymmetricGrid { .. }
                | E::UnitMismatch
                | E::Json(_) => 2,
            },
        }
    }
}
