use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid dimension: expected {expected}, found {found}")]
    InvalidDimension { expected: &'static str, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is non-diagonalizable (defective eigenvalue)")]
    NonDiagonalizable,

    #[error("eigenvector matrix is singular")]
    Singular,

    #[error("broken PT symmetry: alpha = {alpha} is outside the unbroken band |alpha| < pi/2")]
    BrokenPtSymmetry { alpha: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state outside CPT-normalizable sector (CPT norm {norm})")]
    ZeroCptNorm { norm: f64 },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
