use thiserror::Error;

/// Errors raised by lattice construction, distribution solvers and the
/// exact-diagonalization oracle.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("statistics mismatch: expected {expected}, found {found}")]
    StatisticsMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("occupations sum to {actual}, expected {expected}")]
    TotalMismatch { expected: f64, actual: f64 },

    #[error("chemical potential solver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("Fock basis dimension {dimension} exceeds the cap of {cap}")]
    DimensionCap { dimension: usize, cap: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("state has weight outside the basis")]
    OutsideBasis,
}

impl Error {
    /// True for failures of a numerical procedure rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::DimensionCap { .. } | Error::NotHermitian(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
