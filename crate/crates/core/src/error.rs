use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    /// q0 = q1 = 0 puts the complex phase on the |B| = pi/2 branch point where the
    /// polar Cayley-Dickson form is not unique.
    #[error("degenerate polar Cayley-Dickson input: q0 = q1 = 0 (|B| = pi/2 branch is ambiguous)")]
    DegeneratePolar,

    #[error("invalid involution axis {0:?}; expected one of i, j, k")]
    InvalidAxis(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("signal too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("signal is degenerate everywhere: no sample has a usable polar form")]
    DegenerateEverywhere,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Format { path: PathBuf, line: usize, message: String },

    #[error("{path}: missing header key `{key}`")]
    MissingKey { path: PathBuf, key: String },
}

pub type Result<T> = std::result::Result<T, Error>;
