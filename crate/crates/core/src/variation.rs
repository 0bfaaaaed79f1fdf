//! The Laplacian of the canonical variation `g_t`.
//!
//! Every eigenvalue of `Δ_t` has the form `μ + (1/t² − 1)·φ` with `μ` an
//! eigenvalue of `Δ_M` and `φ` one of the fiber. Which pairs occur depends on
//! the global geometry, so for general fibrations only the `t`-independent
//! part (the lifted base spectrum) is exposed. Products are the exception:
//! there `Δ_t = Δ_F/t² + Δ_B` and the whole spectrum is a sum set.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::spectra::SpectrumStream;
use crate::submersion::SubmersionModel;
use crate::{Error, Result};

/// A candidate eigenvalue branch `λ^{k,j}(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VariationEigenvalue {
    pub mu_index: usize,
    pub phi_index: usize,
    pub mu: Scalar,
    pub phi: Scalar,
    /// `φ = 0` and `μ` is a base eigenvalue.
    pub is_constant: bool,
}

impl VariationEigenvalue {
    pub fn value_at(&self, t: &Scalar) -> Scalar {
        component_eigenvalue(&self.mu, &self.phi, t)
    }
}

/// `μ + (1/t² − 1)·φ`.
pub fn component_eigenvalue(mu: &Scalar, phi: &Scalar, t: &Scalar) -> Scalar {
    if phi.is_zero() {
        return mu.clone();
    }
    mu + &((t.square().recip() - Scalar::one()) * phi)
}

/// The base spectrum, which sits inside `Spec(Δ_t)` for every `t`.
pub fn base_spectrum_in_variation(model: &SubmersionModel) -> Result<SpectrumStream> {
    model.base_stream()
}

/// One eigenvalue of a product `Δ_t` with the (base, fiber) entry indices
/// realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEigenvalue {
    pub value: Scalar,
    pub multiplicity: u64,
    /// `(base index, fiber index)` pairs into the two streams.
    pub witnesses: Vec<(usize, usize)>,
}

/// All eigenvalues `< level` of `Δ_t` on a product, including 0.
pub fn product_spectrum_below(model: &SubmersionModel, t: &Scalar, level: &Scalar) -> Result<Vec<ProductEigenvalue>> {
    if !model.is_product {
        return Err(Error::NotAProduct);
    }
    assert!(t.is_positive(), "t must be positive");
    if !level.is_positive() {
        return Ok(Vec::new());
    }
    let Some(mut fiber) = model.fiber_stream()? else {
        return Err(Error::InvalidModel("a product model needs a fiber spectrum".into()));
    };
    let mut base = model.base_stream()?;
    let t2 = t.square();
    let fiber_entries = fiber.entries_below(&(level * &t2))?;
    let mut merged: BTreeMap<Scalar, ProductEigenvalue> = BTreeMap::new();
    for (j, f) in fiber_entries.iter().enumerate() {
        let vertical = &f.value / &t2;
        let room = level - &vertical;
        for (k, b) in base.entries_below(&room)?.iter().enumerate() {
            let value = &vertical + &b.value;
            let slot = merged.entry(value.clone()).or_insert_with(|| ProductEigenvalue {
                value,
                multiplicity: 0,
                witnesses: Vec::new(),
            });
            slot.multiplicity += f.multiplicity * b.multiplicity;
            slot.witnesses.push((k, j));
        }
    }
    Ok(merged.into_values().collect())
}
