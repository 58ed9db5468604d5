use thiserror::Error;

/// Errors produced by state validation and the numeric kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("trace is {trace:.12}, expected 1 within 1e-10")]
    TraceNotOne { trace: f64 },

    #[error("not a state: eigenvalue {eigenvalue:.3e} below -1e-12")]
    NotPositive { eigenvalue: f64 },

    #[error("matrix is not unitary: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("basis is not orthonormal: residual {residual:.3e}")]
    NotOrthonormal { residual: f64 },

    #[error("vector is not normalized: norm {norm:.12}")]
    NotNormalized { norm: f64 },

    #[error("Kraus completeness violated: residual {residual:.3e}")]
    IncompleteKraus { residual: f64 },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("matrix set is empty")]
    EmptySet,

    #[error("size overflow building a {0}x{1} matrix")]
    SizeOverflow(usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension guard exceeded: mn = {0} > {1}")]
    DimensionGuard(usize, usize),

    #[error("correlation value {0:.6e} outside [0, 1] beyond rounding tolerance")]
    CorrelationOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
