use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by how a caller should react: [`Error::Domain`],
/// [`Error::Parse`] and [`Error::Io`] indicate unusable input (CLI exit
/// code 2), while [`Error::Numerical`] indicates that a computation failed to
/// converge or became singular for input that was formally valid (exit
/// code 3).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the range the algorithms support.
    #[error("domain error: {0}")]
    Domain(String),

    /// A data file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A numerical procedure failed (no convergence, singular system,
    /// degenerate nodes, ...).  `stage` names the pipeline step.
    #[error("numerical failure in {stage}: {msg}")]
    Numerical { stage: &'static str, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(stage: &'static str, msg: impl Into<String>) -> Self {
        Error::Numerical {
            stage,
            msg: msg.into(),
        }
    }

    /// Process exit code for the CLI: 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } | Error::Io(_) => 2,
            Error::Numerical { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
