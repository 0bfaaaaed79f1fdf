use crate::exact::{ParseScalarError, Scalar};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An explicit spectrum was queried at or past the level up to which it
    /// is known to be complete.
    #[error("spectrum-exhausted: explicit spectrum is only known below {valid_below}")]
    SpectrumExhausted { valid_below: Scalar },

    #[error("invalid space descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// The declared curvatures would force ‖A‖² < 0.
    #[error("inconsistent-model: {0}")]
    InconsistentModel(String),

    #[error("never-positive: scal(g_t) is not positive for any t > 0")]
    NeverPositive,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("not-a-product: the full spectrum of Δ_t is only available for Riemannian products")]
    NotAProduct,

    #[error("hypothesis-violation: {0}")]
    HypothesisViolation(String),

    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}
