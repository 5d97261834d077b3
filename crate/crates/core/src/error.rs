use thiserror::Error;

/// Errors shared across the library.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type so
/// that the error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least {min} weights, got {got}")]
    TooFewWeights { got: usize, min: usize },
    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {n} too small, need at least {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("weight moduli differ at position {index}")]
    ModulusMismatch { index: usize },
    #[error("weight {index} is zero where a nonzero weight is required")]
    UnexpectedZeroWeight { index: usize },
    #[error("no zero weight within tolerance")]
    NoZeroWeight,
    #[error("cyclic offset {got} outside 1..={n}")]
    OffsetOutOfRange { got: usize, n: usize },
    #[error("{k} is not a proper divisor of {n}")]
    NotADivisor { k: usize, n: usize },
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("input length {got} exceeds the brute-force limit {max}")]
    BruteForceLimit { got: usize, max: usize },
    #[error("shift is {actual}; operation requires {required}")]
    WrongRegime {
        required: &'static str,
        actual: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
