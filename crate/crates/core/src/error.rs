use thiserror::Error;

use crate::stokes::Convention;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (expected {range})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        range: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis mismatch: operator cutoff {left}, vector cutoff {right}")]
    BasisMismatch { left: usize, right: usize },

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("wrong Stokes convention: expected {expected:?}, got {found:?}")]
    WrongConvention {
        expected: Convention,
        found: Convention,
    },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("not z-propagating: third-mode content {0:e} exceeds tolerance")]
    NotZPropagating(f64),

    #[error("degenerate (linear) polarization: orbit plane undefined")]
    DegenerateOrbit,

    #[error("Jacobi eigen-decomposition did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("identifiability: {0}")]
    Identifiability(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("non-finite value in report at `{0}`")]
    NonFinite(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
