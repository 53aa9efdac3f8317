use thiserror::Error;

/// Errors raised by the algebraic, geometric and volume routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bracket of basis elements {i} and {j} does not close on the basis (residual {residual:e})")]
    Closure { i: usize, j: usize, residual: f64 },

    #[error("degenerate plane: Gram determinant {0:e} is below threshold")]
    DegeneratePlane(f64),

    #[error("no sign change of F found on (0, {t_max}]")]
    RootNotFound { t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
