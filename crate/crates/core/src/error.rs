use thiserror::Error;

/// Errors raised across the library.
///
/// Everything except [`Error::Internal`] and [`Error::OracleDisagreement`]
/// is a validation failure caused by the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    #[error("quotient has infinite index (free rank {free_rank})")]
    InfiniteIndex { free_rank: usize },

    #[error("coset enumeration exceeded bound {bound}")]
    BoundExceeded { bound: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("not an involution: theta squared is not the identity")]
    NotAnInvolution,

    #[error("theta does not preserve the coroot lattice")]
    CorootLatticeNotPreserved,

    #[error("theta does not normalize the coroot set: image of {0} is not a coroot")]
    CorootSetNotNormalized(String),

    #[error("spans not complementary: {0}")]
    SpansNotComplementary(String),

    #[error("theta not integral on cocharacter lattice")]
    ThetaNotIntegral,

    #[error("{vector} is not in {lattice}")]
    NotInLattice { vector: String, lattice: String },

    #[error("pairing of weight {label} with {vector} is not half-integral")]
    PairingNotHalfIntegral { label: String, vector: String },

    #[error("invalid job specification: {0}")]
    Parse(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

impl Error {
    /// True for failures that indicate a bug or inconsistent input rather
    /// than a malformed request.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::OracleDisagreement(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
