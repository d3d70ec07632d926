use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("sample length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid scattering profile: {0}")]
    InvalidProfile(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("source iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("non-finite value at cell {cell} (x = {x}) after {iteration} iterations")]
    NonFinite { cell: usize, x: f64, iteration: usize },

    #[error("zero pivot in tridiagonal elimination at row {row}")]
    SingularSystem { row: usize },

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("sample positions are not uniformly spaced (deviation {deviation:.3e} at index {index})")]
    NonUniformGrid { index: usize, deviation: f64 },

    #[error("unsupported Sobolev order {0}")]
    UnsupportedOrder(f64),

    #[error("objective is not unimodal on the search bracket; trace: {trace:?}")]
    BracketFailure { trace: Vec<(f64, f64)> },

    #[error("invalid rate data: {0}")]
    InvalidRateData(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("estimate check failed: {0}")]
    CheckFailed(String),
}
