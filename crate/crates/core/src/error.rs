use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {0} is not in the simplex")]
    NotInSimplex(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix does not act affinely (last row is not (0 ... 0 1))")]
    NotAffine,

    #[error("projective image has vanishing last coordinate")]
    DegenerateProjectiveImage,

    #[error("iteration cap of {cap} exceeded")]
    IterationCapExceeded { cap: usize },

    #[error("no final orbit found within {cap} increments")]
    PruningGapExceeded { cap: usize },

    #[error("point {0} is not dyadic")]
    NotDyadic(String),

    #[error("the preimage of v0 under E is irrational")]
    InverseOfVZero,

    #[error("{0}")]
    Internal(&'static str),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("operation supports dimension {supported} only, got {got}")]
    DimensionUnsupported { supported: usize, got: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by hitting a configured iteration cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::IterationCapExceeded { .. } | Error::PruningGapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
