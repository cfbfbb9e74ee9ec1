use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION: u8 = 1;
    pub const ARGS: u8 = 2;
    pub const IO: u8 = 3;
    pub const SOLVER: u8 = 4;
    pub const RESOLUTION: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Args(String),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] susyhier::Error),

    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use susyhier::Error as E;
        match self {
            CliError::Args(_) => exit::ARGS,
            CliError::Io { .. } => exit::IO,
            CliError::Verification { .. } => exit::VERIFICATION,
            CliError::Core(e) => match e {
                E::Domain(_) | E::Parameter(_) | E::Rejected(_) => exit::ARGS,
                E::Resolution(_) => exit::RESOLUTION,
                E::GridMismatch(_)
                | E::DegenerateGroundState { .. }
                | E::NoSignChange { .. }
                | E::MultipleStates { .. }
                | E::Solver(_)
                | E::Level { .. }
                | E::Fit(_) => exit::SOLVER,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
