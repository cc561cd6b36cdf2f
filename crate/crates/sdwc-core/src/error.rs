//! Error taxonomy shared by every module.
//!
//! The variants map onto the process exit codes used by the CLI:
//! validation/domain/singularity problems are caller errors (exit 2),
//! size problems are resource-cap refusals (exit 3).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Structurally invalid input: malformed distributions, mismatched
    /// cardinalities, unknown or overlapping axis groups, bad schemas.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input outside the mathematical domain of an operation
    /// (e.g. a crossover probability outside [0, 1/2]).
    #[error("domain error: {0}")]
    Domain(String),

    /// A resource cap was exceeded (table cells, enumerated policies,
    /// simulator blocklength). Caps exist to keep exhaustive computation
    /// tractable; see `SDWC_MAX_CELLS` for the table cap override.
    #[error("size error: {0}")]
    Size(String),

    /// A Gaussian conditional covariance is singular for a non-constant
    /// direction, so the requested differential entropy diverges. The
    /// message names the offending term.
    #[error("singularity error: {0}")]
    Singularity(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error onto.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Size(_) => 3,
            _ => 2,
        }
    }
}
