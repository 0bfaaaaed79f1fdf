//! Spectral analysis of the canonical variation of Riemannian submersions
//! with totally geodesic fibers.
//!
//! Shrinking the fibers of `F → M → B` by `t²` gives a family of metrics
//! `g_t` whose scalar curvature is `scal_F/t² + scal_B − t²‖A‖²`. A value of
//! `t` is a degeneracy value of the Yamabe problem when `scal(g_t)/(m−1)` is a
//! Laplace eigenvalue of `g_t`. This crate locates those values exactly,
//! counts the eigenvalues below the threshold, and checks the two criteria
//! (an equivariant trivial-representation count and a curvature-pinching
//! certificate) that upgrade a degeneracy value to a bifurcation value.
//!
//! All arithmetic is exact: see [`exact`].
//!
//! ```
//! use collapse_spectra::{submersion::SubmersionModel, bifurcation, Scalar};
//!
//! let model = SubmersionModel::quaternionic_hopf();
//! let records = bifurcation::first_degeneracies(&model, 3, &Scalar::one()).unwrap();
//! assert_eq!(records[0].eta, Scalar::from_int(16));
//! assert!((records[0].t_approx - 0.3483).abs() < 1e-4);
//! ```

pub mod bifurcation;
mod error;
pub mod exact;
pub mod model_file;
pub mod spectra;
pub mod submersion;
pub mod variation;

pub use error::{Error, Result};
pub use exact::{QuadSurd, Scalar};
