use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: expected {expected}, found {found}")]
    InvalidDimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |A[i][j] - conj(A[j][i])| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },

    #[error("function undefined on eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid state: {reason} (offending value {value:e})")]
    InvalidState { reason: &'static str, value: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("beta * max|E| = {exponent:.3} exceeds 700; use a larger temperature")]
    Overflow { exponent: f64 },

    #[error("threshold function changes sign {count} times on the scan grid")]
    MultipleRoots { count: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }
}
