use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The source statistics do not define a usable entropy function.
    #[error("invalid source: {0}")]
    InvalidSource(String),

    /// The request exceeds what the exhaustive routines are allowed to enumerate.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Wolfe's method hit its iteration cap before the duality gap closed.
    #[error("minimum norm point did not converge after {major_cycles} major cycles (gap {gap:e})")]
    Convergence {
        major_cycles: usize,
        gap: f64,
        best: Vec<f64>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
