//! Error type shared by every module of the crate.

use crate::ortho::OrthoResult;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("norm spec parse failed: {0}")]
    Parse(String),

    /// An orthogonality search exhausted its starts without reaching the
    /// requested residual tolerance. The best point found is attached so
    /// callers can still report it.
    #[error(
        "orthogonality search failed: best residual {residual:.3e} > tol {tol:.3e} \
         after {starts} starts"
    )]
    SearchFailure {
        residual: f64,
        tol: f64,
        starts: usize,
        best: Box<OrthoResult>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }
}
