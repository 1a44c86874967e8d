use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error(transparent)]
    Core(#[from] linkatlas_core::Error),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(
        "estimated cost {estimated} exceeds budget {budget}; narrow the bounds or raise --budget"
    )]
    BoundsTooLarge { estimated: u128, budget: u128 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot encode record: {0}")]
    Encode(#[from] serde_json::Error),
}

impl AtlasError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AtlasError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 invalid input, 3 refused computation, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        use linkatlas_core::Error as E;
        match self {
            AtlasError::InvalidInput(_) => 2,
            AtlasError::BoundsTooLarge { .. } => 3,
            AtlasError::Io { .. } => 4,
            AtlasError::Encode(_) => 1,
            AtlasError::Core(e) => match e {
                E::TooLarge(_) => 3,
                E::NonIntegerResult(_) => 1,
                _ => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, AtlasError>;
