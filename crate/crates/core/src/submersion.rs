//! Riemannian submersions with totally geodesic fibers, as curvature and
//! spectrum data, and the scalar curvature of their canonical variation.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exact::{positive_roots, QuadSurd, Scalar};
use crate::spectra::{spectrum_of, SpaceDescriptor, SpectrumStream};
use crate::{Error, Result};

/// Data for the curvature-pinching certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PinchingData {
    pub k1: Scalar,
    pub k2: Scalar,
    pub tau: Scalar,
    /// Lower bound for the Ricci curvature of `g_τ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ric_m_lower_at_tau: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu1: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi1: Option<Scalar>,
}

/// A submersion `F → M → B` with totally geodesic fibers.
///
/// Fields are public; build through the catalog constructors or fill the
/// struct and call [`SubmersionModel::validated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmersionModel {
    pub name: String,
    pub fiber_dim: usize,
    pub base_dim: usize,
    pub scal_fiber: Scalar,
    pub scal_base: Scalar,
    /// `‖A‖²`, the squared norm of the O'Neill integrability tensor.
    pub a_norm_sq: Scalar,
    pub fiber_spectrum: Option<SpaceDescriptor>,
    pub base_spectrum: SpaceDescriptor,
    pub is_product: bool,
    pub is_homogeneous: bool,
    pub ric_fiber_lower: Option<Scalar>,
    pub pinching: Option<PinchingData>,
    /// Global homothety applied to the metric; spectra are divided by it.
    pub metric_scale: Scalar,
}

/// `scal(g_t) = a/t² + b − c·t²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedScal {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl DeformedScal {
    pub fn at(&self, t: &Scalar) -> Scalar {
        self.at_squared(&t.square())
    }

    /// The value at `t = √u`.
    pub fn at_squared(&self, u: &Scalar) -> Scalar {
        &self.a / u + &self.b - &self.c * u
    }

    /// No dependence on `t` at all.
    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }
}

/// Where `scal(g_s) > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Positivity {
    /// `scal(g_s) > 0` iff `0 < s² < u`.
    Root { u: QuadSurd, s_approx: f64 },
    AlwaysPositive,
}

/// `‖A‖² = scal_F + scal_B − scal(M, g₁)`.
pub fn calibrate_a_norm(scal_fiber: &Scalar, scal_base: &Scalar, scal_total_at_one: &Scalar) -> Result<Scalar> {
    let a = scal_fiber + scal_base - scal_total_at_one;
    if a.is_negative() {
        return Err(Error::InconsistentModel(format!(
            "scal_F + scal_B − scal_M = {scal_fiber} + {scal_base} − {scal_total_at_one} = {a} is negative"
        )));
    }
    Ok(a)
}

impl SubmersionModel {
    pub fn total_dim(&self) -> usize {
        self.fiber_dim + self.base_dim
    }

    /// `m − 1` as a scalar.
    pub fn m_minus_one(&self) -> Scalar {
        Scalar::from_int(self.total_dim() as i64 - 1)
    }

    pub fn deformed_scal(&self) -> DeformedScal {
        DeformedScal { a: self.scal_fiber.clone(), b: self.scal_base.clone(), c: self.a_norm_sq.clone() }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if self.fiber_dim < 1 || self.base_dim < 1 {
            return bad("fiber and base dimensions must be at least 1".into());
        }
        if self.total_dim() < 3 {
            return bad(format!("total dimension {} is below 3", self.total_dim()));
        }
        if self.a_norm_sq.is_negative() {
            return bad(format!("aNormSq = {} is negative", self.a_norm_sq));
        }
        if self.is_product && !self.a_norm_sq.is_zero() {
            return bad("a Riemannian product has aNormSq = 0".into());
        }
        if !self.metric_scale.is_positive() {
            return bad("metric scale must be positive".into());
        }
        let checks = [
            ("fiber", self.fiber_spectrum.as_ref(), self.fiber_dim, &self.scal_fiber),
            ("base", Some(&self.base_spectrum), self.base_dim, &self.scal_base),
        ];
        for (role, space, dim, scal) in checks {
            let Some(space) = space else { continue };
            space.validate()?;
            if let Some(d) = space.dimension() {
                if d != dim {
                    return bad(format!("{role} spectrum describes a {d}-manifold but dim = {dim}"));
                }
            }
            if let Some(catalog) = space.catalog_scal() {
                let catalog = catalog / &self.metric_scale;
                if &catalog != scal {
                    return bad(format!("{role} scal = {scal} disagrees with its spectrum space (scal {catalog})"));
                }
            }
        }
        if let Some(p) = &self.pinching {
            if !p.tau.is_positive() {
                return bad("pinching tau must be positive".into());
            }
        }
        Ok(())
    }

    pub fn scal_t(&self, t: &Scalar) -> Scalar {
        self.deformed_scal().at(t)
    }

    pub fn fiber_stream(&self) -> Result<Option<SpectrumStream>> {
        self.fiber_spectrum
            .as_ref()
            .map(|s| Ok(spectrum_of(s)?.rescaled(&self.metric_scale)))
            .transpose()
    }

    pub fn base_stream(&self) -> Result<SpectrumStream> {
        Ok(spectrum_of(&self.base_spectrum)?.rescaled(&self.metric_scale))
    }

    /// The same fibration with metric `α·g`.
    pub fn rescaled(&self, alpha: &Scalar) -> SubmersionModel {
        assert!(alpha.is_positive(), "homothety factor must be positive");
        let div = |x: &Scalar| x / alpha;
        SubmersionModel {
            name: self.name.clone(),
            scal_fiber: div(&self.scal_fiber),
            scal_base: div(&self.scal_base),
            a_norm_sq: div(&self.a_norm_sq),
            ric_fiber_lower: self.ric_fiber_lower.as_ref().map(div),
            pinching: self.pinching.as_ref().map(|p| PinchingData {
                k1: div(&p.k1),
                k2: div(&p.k2),
                tau: p.tau.clone(),
                ric_m_lower_at_tau: p.ric_m_lower_at_tau.as_ref().map(div),
                mu1: p.mu1.as_ref().map(div),
                phi1: p.phi1.as_ref().map(div),
            }),
            metric_scale: &self.metric_scale * alpha,
            ..self.clone()
        }
    }

    /// The range of fiber scalings with positive scalar curvature.
    pub fn scal_positivity_root(&self) -> Result<Positivity> {
        scal_positivity_root(&self.deformed_scal())
    }

    /// `S¹ → S^{2n+1} → CP^n`.
    pub fn complex_hopf(n: u32) -> SubmersionModel {
        assert!(n >= 1);
        let ni = n as i64;
        let m = 2 * ni + 1;
        let scal_base = Scalar::from_int(4 * ni * (ni + 1));
        let a_norm_sq = calibrate_a_norm(&Scalar::zero(), &scal_base, &Scalar::from_int(m * (m - 1)))
            .expect("round sphere calibration");
        SubmersionModel {
            name: format!("complex-hopf-{n}"),
            fiber_dim: 1,
            base_dim: 2 * n as usize,
            scal_fiber: Scalar::zero(),
            scal_base,
            a_norm_sq,
            fiber_spectrum: Some(SpaceDescriptor::unit_sphere(1)),
            base_spectrum: SpaceDescriptor::ComplexProjective { n },
            is_product: false,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::zero()),
            pinching: None,
            metric_scale: Scalar::one(),
        }
    }

    /// `S³ → S^{4n+3} → HP^n`, fibers scaled uniformly.
    pub fn quaternionic_hopf_family(n: u32) -> SubmersionModel {
        assert!(n >= 1);
        let ni = n as i64;
        let m = 4 * ni + 3;
        let scal_fiber = Scalar::from_int(6);
        let scal_base = Scalar::from_int(16 * ni * (ni + 2));
        let a_norm_sq = calibrate_a_norm(&scal_fiber, &scal_base, &Scalar::from_int(m * (m - 1)))
            .expect("round sphere calibration");
        SubmersionModel {
            name: format!("quaternionic-hopf-{n}"),
            fiber_dim: 3,
            base_dim: 4 * n as usize,
            scal_fiber,
            scal_base,
            a_norm_sq,
            fiber_spectrum: Some(SpaceDescriptor::unit_sphere(3)),
            base_spectrum: SpaceDescriptor::QuaternionicProjective { n },
            is_product: false,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::from_int(2)),
            pinching: None,
            metric_scale: Scalar::one(),
        }
    }

    /// `S³ → S⁷ → S⁴(1/2)` with pinching data `k₁ = k₂ = τ = 1`.
    pub fn quaternionic_hopf() -> SubmersionModel {
        SubmersionModel {
            name: "quaternionic-hopf".into(),
            pinching: Some(PinchingData {
                k1: Scalar::one(),
                k2: Scalar::one(),
                tau: Scalar::one(),
                ric_m_lower_at_tau: Some(Scalar::from_int(6)),
                mu1: None,
                phi1: None,
            }),
            ..SubmersionModel::quaternionic_hopf_family(1)
        }
    }

    /// `S⁷ → S¹⁵ → S⁸(1/2)`.
    pub fn octonionic_hopf() -> SubmersionModel {
        let scal_fiber = Scalar::from_int(42);
        let scal_base = Scalar::from_int(224);
        let a_norm_sq = calibrate_a_norm(&scal_fiber, &scal_base, &Scalar::from_int(210))
            .expect("round sphere calibration");
        SubmersionModel {
            name: "octonionic-hopf".into(),
            fiber_dim: 7,
            base_dim: 8,
            scal_fiber,
            scal_base,
            a_norm_sq,
            fiber_spectrum: Some(SpaceDescriptor::unit_sphere(7)),
            base_spectrum: SpaceDescriptor::sphere(8, Scalar::ratio(1, 2)),
            is_product: false,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::from_int(6)),
            pinching: None,
            metric_scale: Scalar::one(),
        }
    }

    /// `S²(1) × T²` with the unit square lattice, fibered over the torus.
    pub fn s2_x_t2() -> SubmersionModel {
        SubmersionModel {
            name: "s2-x-t2".into(),
            fiber_dim: 2,
            base_dim: 2,
            scal_fiber: Scalar::from_int(2),
            scal_base: Scalar::zero(),
            a_norm_sq: Scalar::zero(),
            fiber_spectrum: Some(SpaceDescriptor::unit_sphere(2)),
            base_spectrum: SpaceDescriptor::unit_torus(2),
            is_product: true,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::one()),
            pinching: None,
            metric_scale: Scalar::one(),
        }
    }

    /// `S²(1) × S²(1)` with pinching data `k₁ = 1, k₂ = 1/3, τ = 1`.
    pub fn s2_x_s2() -> SubmersionModel {
        SubmersionModel {
            name: "s2-x-s2".into(),
            fiber_dim: 2,
            base_dim: 2,
            scal_fiber: Scalar::from_int(2),
            scal_base: Scalar::from_int(2),
            a_norm_sq: Scalar::zero(),
            fiber_spectrum: Some(SpaceDescriptor::unit_sphere(2)),
            base_spectrum: SpaceDescriptor::unit_sphere(2),
            is_product: true,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::one()),
            pinching: Some(PinchingData {
                k1: Scalar::one(),
                k2: Scalar::ratio(1, 3),
                tau: Scalar::one(),
                ric_m_lower_at_tau: Some(Scalar::one()),
                mu1: None,
                phi1: None,
            }),
            metric_scale: Scalar::one(),
        }
    }

    /// Flat `T² → T⁴ → T²`: every metric of the family is flat.
    pub fn torus_fibration() -> SubmersionModel {
        SubmersionModel {
            name: "torus-fibration".into(),
            fiber_dim: 2,
            base_dim: 2,
            scal_fiber: Scalar::zero(),
            scal_base: Scalar::zero(),
            a_norm_sq: Scalar::zero(),
            fiber_spectrum: Some(SpaceDescriptor::unit_torus(2)),
            base_spectrum: SpaceDescriptor::unit_torus(2),
            is_product: true,
            is_homogeneous: true,
            ric_fiber_lower: Some(Scalar::zero()),
            pinching: None,
            metric_scale: Scalar::one(),
        }
    }
}

/// Positive range of `a/u + b − c·u`, as the positive root of
/// `c·u² − b·u − a = 0`.
pub fn scal_positivity_root(scal: &DeformedScal) -> Result<Positivity> {
    let DeformedScal { a, b, c } = scal;
    if !a.is_positive() && !b.is_positive() {
        return Err(Error::NeverPositive);
    }
    if a.is_negative() {
        return Err(Error::Unsupported(format!(
            "scal_F = {a} < 0: scal(g_t) is negative for small t, so positivity is not an interval (0, s_max)"
        )));
    }
    if c.is_zero() && b.signum() != Ordering::Less {
        return Ok(Positivity::AlwaysPositive);
    }
    let roots = positive_roots(c, &-b, &-a);
    let u = roots.into_iter().last().expect("a positive root exists when scal changes sign");
    let s_approx = u.sqrt_f64();
    Ok(Positivity::Root { u, s_approx })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_examples() {
        let c = |f: i64, b: i64, m: i64| calibrate_a_norm(&f.into(), &b.into(), &m.into()).unwrap();
        assert_eq!(c(0, 8, 6), Scalar::from_int(2));
        assert_eq!(c(6, 48, 42), Scalar::from_int(12));
        assert_eq!(c(42, 224, 210), Scalar::from_int(56));
        assert!(matches!(
            calibrate_a_norm(&0.into(), &1.into(), &6.into()),
            Err(Error::InconsistentModel(_))
        ));
    }

    #[test]
    fn round_metric_recovered_at_one() {
        assert_eq!(SubmersionModel::complex_hopf(1).scal_t(&Scalar::one()), Scalar::from_int(6));
        assert_eq!(SubmersionModel::quaternionic_hopf().scal_t(&Scalar::one()), Scalar::from_int(42));
        assert_eq!(SubmersionModel::octonionic_hopf().scal_t(&Scalar::one()), Scalar::from_int(210));
    }

    #[test]
    fn catalog_models_validate() {
        for m in [
            SubmersionModel::complex_hopf(3),
            SubmersionModel::quaternionic_hopf_family(2),
            SubmersionModel::quaternionic_hopf(),
            SubmersionModel::octonionic_hopf(),
            SubmersionModel::s2_x_t2(),
            SubmersionModel::s2_x_s2(),
            SubmersionModel::torus_fibration(),
        ] {
            m.validate().unwrap_or_else(|e| panic!("{}: {e}", m.name));
        }
    }

    #[test]
    fn rescaling_is_homothety() {
        let m = SubmersionModel::quaternionic_hopf();
        let alpha = Scalar::ratio(5, 3);
        let r = m.rescaled(&alpha);
        r.validate().unwrap();
        let t = Scalar::ratio(2, 7);
        assert_eq!(r.scal_t(&t), m.scal_t(&t) / &alpha);
    }

    #[test]
    fn positivity_complex_hopf() {
        let Positivity::Root { u, .. } = SubmersionModel::complex_hopf(2).scal_positivity_root().unwrap() else {
            panic!()
        };
        assert_eq!(u, QuadSurd::from_scalar(Scalar::from_int(6)));
    }

    #[test]
    fn positivity_edge_cases() {
        let d = |a: i64, b: i64, c: i64| DeformedScal { a: a.into(), b: b.into(), c: c.into() };
        assert!(matches!(scal_positivity_root(&d(0, 0, 1)), Err(Error::NeverPositive)));
        assert!(matches!(scal_positivity_root(&d(0, -1, 0)), Err(Error::NeverPositive)));
        assert_eq!(scal_positivity_root(&d(2, 0, 0)).unwrap(), Positivity::AlwaysPositive);
        let Positivity::Root { u, .. } = scal_positivity_root(&d(2, -1, 0)).unwrap() else { panic!() };
        assert_eq!(u, QuadSurd::from_scalar(Scalar::from_int(2)));
    }

    #[test]
    fn invalid_models_rejected() {
        let mut m = SubmersionModel::s2_x_t2();
        m.a_norm_sq = Scalar::one();
        assert!(m.validate().is_err());
        let mut m = SubmersionModel::complex_hopf(1);
        m.scal_base = Scalar::from_int(9);
        assert!(m.validate().is_err());
        let mut m = SubmersionModel::complex_hopf(1);
        m.base_dim = 3;
        assert!(m.validate().is_err());
    }
}
