//! Exact arithmetic in ℚ(π²) and its quadratic extensions.
//!
//! Flat-torus eigenvalues are rational multiples of π², so every curvature,
//! threshold and eigenvalue the engine touches lives in ℚ(π²). Since π is
//! transcendental a nonzero element never vanishes, and its sign is settled
//! by evaluating against shrinking rational enclosures of π².

mod pi;
mod poly;
mod scalar;
mod surd;

pub use pi::pi_squared_enclosure;
pub use scalar::{ParseScalarError, Scalar};
pub use surd::{
    positive_roots, rational_between, rational_sqrt_between, simplest_between, QuadSurd,
};
