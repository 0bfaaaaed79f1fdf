//! JSON model files.
//!
//! ```json
//! {
//!   "name": "s2-x-t2",
//!   "fiber": { "space": { "type": "sphere", "n": 2 }, "dim": 2, "scal": 2, "ricLower": 1 },
//!   "base": { "space": { "type": "flat-torus", "gram": [[1, 0], [0, 1]] }, "dim": 2, "scal": 0 },
//!   "aNormSq": 0,
//!   "flags": { "product": true, "homogeneous": true }
//! }
//! ```
//!
//! Scalars are integers or strings such as `"3/2"` or `"pi2*4"`; JSON
//! floats are rejected. Exactly one of `aNormSq` and
//! `calibrate: { "totalScalAtOne": … }` must be present.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::spectra::SpaceDescriptor;
use crate::submersion::{calibrate_a_norm, PinchingData, SubmersionModel};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FiberSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDescriptor>,
    pub dim: usize,
    pub scal: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ric_lower: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BaseSection {
    pub space: SpaceDescriptor,
    pub dim: usize,
    pub scal: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Calibration {
    pub total_scal_at_one: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub product: bool,
    #[serde(default)]
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub fiber: FiberSection,
    pub base: BaseSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_norm_sq: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibrate: Option<Calibration>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinching: Option<PinchingData>,
}

impl ModelFile {
    pub fn parse(json: &str) -> Result<ModelFile> {
        serde_json::from_str(json).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn into_model(self) -> Result<SubmersionModel> {
        let a_norm_sq = match (self.a_norm_sq, self.calibrate) {
            (Some(a), None) => a,
            (None, Some(c)) => calibrate_a_norm(&self.fiber.scal, &self.base.scal, &c.total_scal_at_one)?,
            _ => {
                return Err(Error::InvalidModel(
                    "exactly one of aNormSq and calibrate must be given".into(),
                ))
            }
        };
        SubmersionModel {
            name: self.name,
            fiber_dim: self.fiber.dim,
            base_dim: self.base.dim,
            scal_fiber: self.fiber.scal,
            scal_base: self.base.scal,
            a_norm_sq,
            fiber_spectrum: self.fiber.space,
            base_spectrum: self.base.space,
            is_product: self.flags.product,
            is_homogeneous: self.flags.homogeneous,
            ric_fiber_lower: self.fiber.ric_lower,
            pinching: self.pinching,
            metric_scale: Scalar::one(),
        }
        .validated()
    }

    /// The file form of a model built in code (with `aNormSq` spelled out).
    pub fn from_model(model: &SubmersionModel) -> ModelFile {
        assert!(model.metric_scale == Scalar::one(), "rescaled models have no file form");
        ModelFile {
            name: model.name.clone(),
            fiber: FiberSection {
                space: model.fiber_spectrum.clone(),
                dim: model.fiber_dim,
                scal: model.scal_fiber.clone(),
                ric_lower: model.ric_fiber_lower.clone(),
            },
            base: BaseSection {
                space: model.base_spectrum.clone(),
                dim: model.base_dim,
                scal: model.scal_base.clone(),
            },
            a_norm_sq: Some(model.a_norm_sq.clone()),
            calibrate: None,
            flags: Flags { product: model.is_product, homogeneous: model.is_homogeneous },
            pinching: model.pinching.clone(),
        }
    }
}

/// Parse and validate a model from JSON text.
pub fn parse_model(json: &str) -> Result<SubmersionModel> {
    ModelFile::parse(json)?.into_model()
}

/// Read, parse and validate a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<SubmersionModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidModel(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}
