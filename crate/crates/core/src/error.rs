use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// The iteration cap was hit. `partial` holds whatever converged before the failure.
    #[error("{routine} did not converge after {iterations} iterations")]
    Convergence {
        routine: &'static str,
        iterations: usize,
        partial: Vec<Complex64>,
    },

    #[error("matrix is singular to working precision (pivot {pivot:e} at column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("unsupported order n = {0}; magic squares are constructed for n >= 3")]
    UnsupportedOrder(usize),

    #[error("order n = {n} is not {expected}")]
    Parity { n: usize, expected: &'static str },

    #[error("stride g = {g} is not coprime with n = {n}")]
    InvalidStride { n: usize, g: usize },

    #[error("circulant eigenvalue lambda_{j} is zero; reverse-circulant phase undefined")]
    DegenerateSpectrum { j: usize },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("zero classification mismatch: {observed} eigenvalues left to match against {expected} approximations ({zeros} classified as zero)")]
    Classification {
        observed: usize,
        expected: usize,
        zeros: usize,
    },

    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),
}
