//! Degeneracy values of the Yamabe Jacobi operator along `g_t` and the
//! criteria certifying them as bifurcation values.
//!
//! `t` is a degeneracy value when `scal(g_t)/(m−1)` is an eigenvalue of
//! `Δ_t`. Crossings with a base eigenvalue `η` solve
//! `c·u² + ((m−1)η − b)·u − a = 0` in `u = t²`, so they are quadratic surds
//! and are handled exactly. Counts on either side of a crossing are taken at
//! rational points strictly between adjacent roots, where they are constant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{positive_roots, rational_sqrt_between, QuadSurd, Scalar};
use crate::spectra::SpectrumStream;
use crate::submersion::SubmersionModel;
use crate::variation::product_spectrum_below;
use crate::{Error, Result};

/// `scal(g_t)/(m−1)`.
pub fn threshold(model: &SubmersionModel, t: &Scalar) -> Scalar {
    model.scal_t(t) / model.m_minus_one()
}

/// Coefficients of `u2·u² + u1·u + u0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadratic {
    pub u2: Scalar,
    pub u1: Scalar,
    pub u0: Scalar,
}

impl Quadratic {
    pub fn eval(&self, u: &QuadSurd) -> QuadSurd {
        let lin = u.scale(&self.u1).shift(&self.u0);
        let sq = u.square().scale(&self.u2);
        QuadSurd::new(
            sq.rational_part() + lin.rational_part(),
            sq.coefficient() + lin.coefficient(),
            if sq.coefficient().is_zero() { lin.radicand().clone() } else { sq.radicand().clone() },
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// A drop in the trivial-representation count of the negative
    /// isotropy representation.
    Equivariant,
    /// A Morse-index change guaranteed by a passing pinching certificate.
    MorseIndex,
    None,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Equivariant => "equivariant",
            Certification::MorseIndex => "morse-index",
            Certification::None => "none",
        })
    }
}

/// One degeneracy value `t_q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegeneracyRecord {
    pub quadratic: Quadratic,
    /// The root `u = t_q²`.
    pub u: QuadSurd,
    pub t_approx: f64,
    /// The crossed base eigenvalue.
    pub eta: Scalar,
    /// Position of `η` in the base stream.
    pub eta_index: usize,
    pub multiplicity: u64,
    pub j_jump: u64,
    pub certified_by: Certification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegeneracyScan {
    pub records: Vec<DegeneracyRecord>,
    /// `a = c = 0`: the whole family has one scalar curvature and no
    /// crossings are possible.
    pub scal_independent_of_t: bool,
}

fn check_interval(t_min: &Scalar, t_max: &Scalar) -> Result<()> {
    if !t_min.is_positive() || t_min >= t_max {
        return Err(Error::InvalidInterval(format!("need 0 < tMin < tMax, got [{t_min}, {t_max}]")));
    }
    Ok(())
}

fn crossing_quadratic(model: &SubmersionModel, eta: &Scalar) -> Quadratic {
    let s = model.deformed_scal();
    Quadratic { u2: s.c, u1: model.m_minus_one() * eta - &s.b, u0: -s.a }
}

/// What certification the model supports, and up to which `u` for the
/// Morse-index criterion.
struct Certifier {
    equivariant: bool,
    morse_below: Option<Scalar>,
}

impl Certifier {
    fn for_model(model: &SubmersionModel) -> Certifier {
        let equivariant = equivariant_hypotheses(model).is_ok();
        let morse_below = model.pinching.as_ref().and_then(|p| {
            let cert = pinching_certificate(model, &p.k1, &p.k2, &p.tau, p.mu1.as_ref(), p.phi1.as_ref()).ok()?;
            cert.t_star_sq
        });
        Certifier { equivariant, morse_below }
    }

    fn tag(&self, u: &QuadSurd) -> Certification {
        if self.equivariant {
            Certification::Equivariant
        } else if self.morse_below.as_ref().is_some_and(|b| *u < QuadSurd::from_scalar(b.clone())) {
            Certification::MorseIndex
        } else {
            Certification::None
        }
    }
}

fn record(model: &SubmersionModel, eta: &Scalar, eta_index: usize, multiplicity: u64, u: QuadSurd, certifier: &Certifier) -> DegeneracyRecord {
    let t_approx = u.sqrt_f64();
    let certified_by = certifier.tag(&u);
    DegeneracyRecord {
        quadratic: crossing_quadratic(model, eta),
        u,
        t_approx,
        eta: eta.clone(),
        eta_index,
        multiplicity,
        j_jump: multiplicity,
        certified_by,
    }
}

fn all_entries_up_to(stream: &mut SpectrumStream, level: &Scalar) -> Result<Vec<(usize, Scalar, u64)>> {
    let count = stream.eigenvalues_below(level, false)?.len();
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let e = stream.entry(i)?;
        if e.value.is_positive() {
            out.push((i, e.value.clone(), e.multiplicity));
        }
        i += 1;
    }
    Ok(out)
}

/// Every `t ∈ [t_min, t_max]` where the threshold meets a positive base
/// eigenvalue, in increasing `t`.
pub fn degeneracy_values(model: &SubmersionModel, t_min: &Scalar, t_max: &Scalar) -> Result<DegeneracyScan> {
    check_interval(t_min, t_max)?;
    let scal = model.deformed_scal();
    if scal.is_constant() {
        return Ok(DegeneracyScan { records: Vec::new(), scal_independent_of_t: true });
    }
    // largest threshold on the interval bounds the relevant η
    let top = if scal.a.is_negative() {
        scal.b.clone().max(Scalar::zero()) / model.m_minus_one()
    } else {
        threshold(model, t_min)
    };
    let mut base = model.base_stream()?;
    let certifier = Certifier::for_model(model);
    let (lo, hi) = (QuadSurd::from_scalar(t_min.square()), QuadSurd::from_scalar(t_max.square()));
    let mut records = Vec::new();
    if top.is_positive() {
        for (index, eta, mult) in all_entries_up_to(&mut base, &top)? {
            let q = crossing_quadratic(model, &eta);
            for u in positive_roots(&q.u2, &q.u1, &q.u0) {
                if u >= lo && u <= hi {
                    records.push(record(model, &eta, index, mult, u, &certifier));
                }
            }
        }
    }
    records.sort_by(|x, y| x.u.cmp(&y.u));
    Ok(DegeneracyScan { records, scal_independent_of_t: false })
}

/// The first `count` degeneracy values at or below `t_max`, in decreasing
/// `t`. Needs `scal_F > 0`, which makes them accumulate at 0.
pub fn first_degeneracies(model: &SubmersionModel, count: usize, t_max: &Scalar) -> Result<Vec<DegeneracyRecord>> {
    if !t_max.is_positive() {
        return Err(Error::InvalidInterval(format!("tMax must be positive, got {t_max}")));
    }
    if !model.scal_fiber.is_positive() {
        return Err(Error::Unsupported(
            "degeneracy values accumulate at 0 only when scal_F > 0; use an explicit interval".into(),
        ));
    }
    let mut base = model.base_stream()?;
    let certifier = Certifier::for_model(model);
    let floor = threshold(model, t_max);
    let mut records = Vec::new();
    let mut i = 0;
    while records.len() < count {
        let e = base.entry(i)?.clone();
        if e.value.is_positive() && e.value >= floor {
            let q = crossing_quadratic(model, &e.value);
            // a > 0 and c ≥ 0 leave exactly one positive root
            if let Some(u) = positive_roots(&q.u2, &q.u1, &q.u0).pop() {
                records.push(record(model, &e.value, i, e.multiplicity, u, &certifier));
            }
        }
        i += 1;
    }
    Ok(records)
}

/// Base eigenvalues below the threshold, counted with multiplicity: the
/// number of trivial summands of the negative isotropy representation.
pub fn trivial_count(model: &SubmersionModel, t: &Scalar, strict: bool) -> Result<u64> {
    let level = threshold(model, t);
    model.base_stream()?.counting_below(&level, strict)
}

fn equivariant_hypotheses(model: &SubmersionModel) -> Result<()> {
    if !model.is_homogeneous {
        return Err(Error::HypothesisViolation(
            "the equivariant criterion needs a homogeneous fibration".into(),
        ));
    }
    if !model.scal_fiber.is_positive() {
        return Err(Error::HypothesisViolation(format!(
            "fiber must have positive scalar curvature (scal_F = {})",
            model.scal_fiber
        )));
    }
    if model.fiber_dim < 2 {
        return Err(Error::HypothesisViolation("fiber dimension ≥ 2 required".into()));
    }
    Ok(())
}

/// Degeneracy values on `[t_min, t_max]` certified by the jump of the
/// trivial count. A `t`-independent family returns an empty scan with its
/// flag set.
pub fn equivariant_bifurcation_report(model: &SubmersionModel, t_min: &Scalar, t_max: &Scalar) -> Result<DegeneracyScan> {
    check_interval(t_min, t_max)?;
    if model.deformed_scal().is_constant() {
        return Ok(DegeneracyScan { records: Vec::new(), scal_independent_of_t: true });
    }
    equivariant_hypotheses(model)?;
    let mut scan = degeneracy_values(model, t_min, t_max)?;
    for r in &mut scan.records {
        r.certified_by = Certification::Equivariant;
    }
    Ok(scan)
}

/// The first `count` equivariantly certified bifurcation values below `t_max`.
pub fn equivariant_first(model: &SubmersionModel, count: usize, t_max: &Scalar) -> Result<Vec<DegeneracyRecord>> {
    equivariant_hypotheses(model)?;
    first_degeneracies(model, count, t_max)
}

/// Morse index of the Yamabe functional at `g_t` for a product: positive
/// eigenvalues of `Δ_t` below the threshold, with multiplicity.
pub fn morse_index_product(model: &SubmersionModel, t: &Scalar) -> Result<u64> {
    morse_count_product(model, t, true)
}

/// As [`morse_index_product`], optionally counting eigenvalues equal to the
/// threshold too.
pub fn morse_count_product(model: &SubmersionModel, t: &Scalar, strict: bool) -> Result<u64> {
    if !model.is_product {
        return Err(Error::NotAProduct);
    }
    let level = threshold(model, t);
    if !level.is_positive() {
        return Ok(0);
    }
    let entries = if strict {
        product_spectrum_below(model, t, &level)?
    } else {
        // the next value above the threshold is at least the gap to it;
        // enlarge slightly and filter
        let wider = &level + &Scalar::one();
        product_spectrum_below(model, t, &wider)?.into_iter().filter(|e| e.value <= level).collect()
    };
    Ok(entries.iter().filter(|e| e.value.is_positive()).map(|e| e.multiplicity).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Ge,
    Lt,
    Le,
}

impl Relation {
    fn holds(self, lhs: &Scalar, rhs: &Scalar) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => "≥",
            Relation::Lt => "<",
            Relation::Le => "≤",
        }
    }
}

/// One inequality of the pinching certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: Option<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
    /// `None` when the model has no data for the left side.
    pub holds: Option<bool>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.lhs, self.holds) {
            (Some(lhs), Some(h)) => {
                write!(f, "{}: {lhs} {} {} {}", self.name, self.relation.symbol(), self.rhs, if h { "true" } else { "false" })
            }
            _ => write!(f, "{}: skipped (no data)", self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    Given,
    Spectrum,
    Lichnerowicz,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub k1: Scalar,
    pub k2: Scalar,
    pub tau: Scalar,
    pub checks: Vec<Check>,
    pub phi1: Scalar,
    pub phi1_source: BoundSource,
    pub mu1: Scalar,
    pub mu1_source: BoundSource,
    /// `t*²`, present on pass.
    pub t_star_sq: Option<Scalar>,
    pub t_star: Option<QuadSurd>,
    pub t_star_approx: Option<f64>,
    pub pass: bool,
    /// Name of the first failing inequality.
    pub failed: Option<String>,
    pub m: usize,
}

impl Certificate {
    /// The smallest non-constant eigenvalue candidate of `Δ_t`,
    /// `μ₁ + (1/t² − 1/τ²)·φ₁`.
    pub fn minimal_candidate(&self, t: &Scalar) -> Scalar {
        &self.mu1 + &((t.square().recip() - self.tau.square().recip()) * &self.phi1)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.holds == Some(false))
    }
}

/// Curvature-pinching certificate for the Morse-index criterion.
///
/// `φ₁` and `μ₁` are taken from the arguments when given, otherwise from the
/// fiber spectrum (resp. the product spectrum at `τ`), otherwise from the
/// Lichnerowicz bounds `l·k₁` and `m·k₂`. Failing inequalities are reported
/// in the certificate; only a fiber of dimension 1 or missing data is an error.
pub fn pinching_certificate(
    model: &SubmersionModel,
    k1: &Scalar,
    k2: &Scalar,
    tau: &Scalar,
    mu1: Option<&Scalar>,
    phi1: Option<&Scalar>,
) -> Result<Certificate> {
    let l = model.fiber_dim;
    let m = model.total_dim();
    if l < 2 {
        return Err(Error::HypothesisViolation("fiber dimension ≥ 2 required".into()));
    }
    if !k1.is_positive() || !k2.is_positive() || !tau.is_positive() {
        return Err(Error::HypothesisViolation(format!(
            "k1, k2 and tau must be positive (got {k1}, {k2}, {tau})"
        )));
    }
    let li = Scalar::from_int(l as i64);
    let mi = Scalar::from_int(m as i64);
    let m1 = model.m_minus_one();
    let ric_m = model.pinching.as_ref().and_then(|p| p.ric_m_lower_at_tau.clone());
    let make = |name: &str, lhs: Option<Scalar>, relation: Relation, rhs: Scalar| {
        let holds = lhs.as_ref().map(|x| relation.holds(x, &rhs));
        Check { name: name.into(), lhs, relation, rhs, holds }
    };
    let mut checks = vec![
        make("Ric_F ≥ (l−1)k₁", model.ric_fiber_lower.clone(), Relation::Ge, Scalar::from_int(l as i64 - 1) * k1),
        make("scal_F < l(m−1)k₁", Some(model.scal_fiber.clone()), Relation::Lt, &li * &m1 * k1),
        make("Ric_{g_τ} ≥ (m−1)k₂", ric_m, Relation::Ge, &m1 * k2),
        make("scal_B ≤ m(m−1)k₂", Some(model.scal_base.clone()), Relation::Le, &mi * &m1 * k2),
    ];
    let ric_f_ok = checks[0].holds == Some(true);
    let ric_m_ok = checks[2].holds == Some(true);

    let fiber_first = match model.fiber_stream()? {
        Some(mut s) => Some(s.first_positive()?.value),
        None => None,
    };
    let (phi1, phi1_source) = match (phi1, &fiber_first) {
        (Some(p), _) => (p.clone(), BoundSource::Given),
        (None, Some(p)) => (p.clone(), BoundSource::Spectrum),
        (None, None) if ric_f_ok => (&li * k1, BoundSource::Lichnerowicz),
        _ => {
            return Err(Error::HypothesisViolation(
                "φ₁ unavailable: give phi1, a fiber spectrum or a fiber Ricci bound".into(),
            ))
        }
    };
    let (mu1, mu1_source) = match mu1 {
        Some(v) => (v.clone(), BoundSource::Given),
        None if model.is_product => {
            let base_first = model.base_stream()?.first_positive()?.value;
            let fiber_at_tau = fiber_first.map(|p| p / tau.square());
            let v = match fiber_at_tau {
                Some(f) => base_first.min(f),
                None => base_first,
            };
            (v, BoundSource::Spectrum)
        }
        None if ric_m_ok => (&mi * k2, BoundSource::Lichnerowicz),
        None => {
            return Err(Error::HypothesisViolation(
                "μ₁ unavailable: give mu1 or ricMLowerAtTau".into(),
            ))
        }
    };
    checks.push(make("scal_F < (m−1)φ₁", Some(model.scal_fiber.clone()), Relation::Lt, &m1 * &phi1));
    checks.push(make("scal_B ≤ (m−1)μ₁", Some(model.scal_base.clone()), Relation::Le, &m1 * &mu1));

    let failed = checks.iter().find(|c| c.holds == Some(false)).map(|c| c.name.clone());
    let pass = failed.is_none();
    let t_star_sq = pass.then(|| {
        let raw = tau.square() * (Scalar::one() - &model.scal_fiber / (&m1 * &phi1));
        raw.min(tau.square())
    });
    let t_star = t_star_sq.clone().map(QuadSurd::sqrt);
    let t_star_approx = t_star.as_ref().map(QuadSurd::to_f64);
    Ok(Certificate {
        k1: k1.clone(),
        k2: k2.clone(),
        tau: tau.clone(),
        checks,
        phi1,
        phi1_source,
        mu1,
        mu1_source,
        t_star_sq,
        t_star,
        t_star_approx,
        pass,
        failed,
        m,
    })
}

/// Certificate from the pinching data stored in the model.
pub fn model_certificate(model: &SubmersionModel) -> Result<Certificate> {
    let Some(p) = &model.pinching else {
        return Err(Error::HypothesisViolation("model carries no pinching data".into()));
    };
    pinching_certificate(model, &p.k1, &p.k2, &p.tau, p.mu1.as_ref(), p.phi1.as_ref())
}

/// Rational sample points on both sides of a degeneracy value, strictly
/// inside the neighboring gaps between roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Neighborhood {
    pub t_left: Scalar,
    pub t_right: Scalar,
}

/// Needs `scal_F > 0`, where the threshold is strictly decreasing and the
/// neighbors of the `η` crossing are the crossings of adjacent eigenvalues.
pub fn neighborhood(model: &SubmersionModel, record: &DegeneracyRecord) -> Result<Neighborhood> {
    if !model.scal_fiber.is_positive() {
        return Err(Error::Unsupported("neighborhoods need scal_F > 0".into()));
    }
    let mut base = model.base_stream()?;
    let root_for = |eta: &Scalar| {
        let q = crossing_quadratic(model, eta);
        positive_roots(&q.u2, &q.u1, &q.u0).pop()
    };
    let next = base.entry(record.eta_index + 1)?.value.clone();
    let below = root_for(&next).expect("larger eigenvalue crosses at smaller t");
    let above = if record.eta_index >= 1 {
        let prev = base.entry(record.eta_index - 1)?.value.clone();
        if prev.is_positive() {
            root_for(&prev)
        } else {
            None
        }
    } else {
        None
    };
    let above = above.unwrap_or_else(|| record.u.shift(&Scalar::one()));
    let t_left = Scalar::from_rational(rational_sqrt_between(&below, &record.u));
    let t_right = Scalar::from_rational(rational_sqrt_between(&record.u, &above));
    Ok(Neighborhood { t_left, t_right })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Base eigenvalues below the threshold, a lower bound for the index.
    TrivialCount,
    MorseIndex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MultiplicityEntry {
    pub record: DegeneracyRecord,
    pub neighborhood: Neighborhood,
    pub kind: WitnessKind,
    pub index_left: u64,
    pub index_right: u64,
    /// Set when the index is positive near `t_q`.
    pub conclusion: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MultiplicityReport {
    pub entries: Vec<MultiplicityEntry>,
    /// Certified values whose index could not be shown positive.
    pub no_witness: Vec<DegeneracyRecord>,
}

pub const MULTIPLICITY_CONCLUSION: &str = "at least 3 solutions in [g_t] for t arbitrarily close to t_q";

/// For each certified bifurcation value on `[t_min, t_max]`, a positive
/// index just below it, which yields non-uniqueness in nearby conformal
/// classes.
pub fn multiplicity_report(model: &SubmersionModel, t_min: &Scalar, t_max: &Scalar) -> Result<MultiplicityReport> {
    let scan = degeneracy_values(model, t_min, t_max)?;
    let mut report = MultiplicityReport { entries: Vec::new(), no_witness: Vec::new() };
    for record in scan.records {
        if record.certified_by == Certification::None {
            continue;
        }
        let Ok(neighborhood) = neighborhood(model, &record) else {
            report.no_witness.push(record);
            continue;
        };
        let (kind, index_left, index_right) = if model.is_product {
            (
                WitnessKind::MorseIndex,
                morse_index_product(model, &neighborhood.t_left)?,
                morse_index_product(model, &neighborhood.t_right)?,
            )
        } else {
            (
                WitnessKind::TrivialCount,
                trivial_count(model, &neighborhood.t_left, true)?,
                trivial_count(model, &neighborhood.t_right, true)?,
            )
        };
        if index_left == 0 {
            report.no_witness.push(record);
            continue;
        }
        report.entries.push(MultiplicityEntry {
            record,
            neighborhood,
            kind,
            index_left,
            index_right,
            conclusion: Some(MULTIPLICITY_CONCLUSION.into()),
        });
    }
    Ok(report)
}

/// `steps` rational points from `t_min` to `t_max`, geometrically spaced and
/// rounded to six decimals (endpoints exact, strictly increasing).
pub fn log_grid(t_min: &Scalar, t_max: &Scalar, steps: usize) -> Result<Vec<Scalar>> {
    grid(t_min, t_max, steps, |lo, hi, x| lo * (hi / lo).powf(x))
}

/// As [`log_grid`] with uniform spacing.
pub fn linear_grid(t_min: &Scalar, t_max: &Scalar, steps: usize) -> Result<Vec<Scalar>> {
    grid(t_min, t_max, steps, |lo, hi, x| lo + (hi - lo) * x)
}

fn grid(t_min: &Scalar, t_max: &Scalar, steps: usize, place: impl Fn(f64, f64, f64) -> f64) -> Result<Vec<Scalar>> {
    check_interval(t_min, t_max)?;
    if steps < 2 {
        return Err(Error::InvalidInterval(format!("a grid needs at least 2 points, got {steps}")));
    }
    let (lo, hi) = (t_min.to_f64(), t_max.to_f64());
    let mut out = vec![t_min.clone()];
    for i in 1..steps - 1 {
        let x = place(lo, hi, i as f64 / (steps - 1) as f64);
        let t = Scalar::ratio((x * 1e6).round() as i64, 1_000_000);
        if t > *out.last().unwrap() && t < *t_max {
            out.push(t);
        } else {
            return Err(Error::InvalidInterval(format!(
                "[{t_min}, {t_max}] is too narrow for {steps} six-decimal grid points"
            )));
        }
    }
    out.push(t_max.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(&SubmersionModel::quaternionic_hopf(), &Scalar::one()), s(7));
        let t = Scalar::ratio(1, 3);
        assert_eq!(threshold(&SubmersionModel::s2_x_t2(), &t), s(6));
    }

    #[test]
    fn first_quaternionic_crossing() {
        let m = SubmersionModel::quaternionic_hopf();
        let scan = degeneracy_values(&m, &Scalar::ratio(1, 5), &Scalar::one()).unwrap();
        assert_eq!(scan.records.len(), 1);
        let r = &scan.records[0];
        assert_eq!(r.eta, s(16));
        assert_eq!(r.multiplicity, 5);
        // u = (3√2 − 4)/2
        let expected = QuadSurd::new(s(-2), Scalar::ratio(3, 2), s(2));
        assert_eq!(r.u, expected);
        assert!(r.quadratic.eval(&r.u).signum().is_eq());
        assert!((r.t_approx - 0.34831).abs() < 1e-4);
        assert_eq!(r.certified_by, Certification::Equivariant);
    }

    #[test]
    fn complex_hopf_has_no_crossings() {
        let m = SubmersionModel::complex_hopf(1);
        let scan = degeneracy_values(&m, &Scalar::ratio(1, 1000), &Scalar::one()).unwrap();
        assert!(scan.records.is_empty());
        assert!(!scan.scal_independent_of_t);
    }

    #[test]
    fn torus_fibration_is_rigid() {
        let m = SubmersionModel::torus_fibration();
        let scan = equivariant_bifurcation_report(&m, &Scalar::ratio(1, 100), &Scalar::one()).unwrap();
        assert!(scan.records.is_empty() && scan.scal_independent_of_t);
    }

    #[test]
    fn trivial_counts_quaternionic() {
        let m = SubmersionModel::quaternionic_hopf();
        assert_eq!(trivial_count(&m, &Scalar::ratio(1, 2), true).unwrap(), 0);
        assert_eq!(trivial_count(&m, &Scalar::ratio(3, 10), true).unwrap(), 5);
    }

    #[test]
    fn hypothesis_gates() {
        let m = SubmersionModel::complex_hopf(1);
        assert!(matches!(
            equivariant_bifurcation_report(&m, &Scalar::ratio(1, 10), &Scalar::one()),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            pinching_certificate(&m, &s(1), &s(1), &s(1), None, None),
            Err(Error::HypothesisViolation(msg)) if msg.contains("fiber dimension")
        ));
        assert!(matches!(degeneracy_values(&m, &s(1), &s(1)), Err(Error::InvalidInterval(_))));
    }

    #[test]
    fn s2_x_s2_certificate() {
        let cert = model_certificate(&SubmersionModel::s2_x_s2()).unwrap();
        assert!(cert.pass, "{:?}", cert.failed);
        assert_eq!(cert.t_star_sq, Some(Scalar::ratio(2, 3)));
        assert_eq!(cert.phi1, s(2));
        assert_eq!(cert.mu1, s(2));
    }

    #[test]
    fn quaternionic_certificate_fails_on_base() {
        let cert = model_certificate(&SubmersionModel::quaternionic_hopf()).unwrap();
        assert!(!cert.pass);
        let bad = cert.first_failure().unwrap();
        assert_eq!(bad.name, "scal_B ≤ m(m−1)k₂");
        assert_eq!(bad.to_string(), "scal_B ≤ m(m−1)k₂: 48 ≤ 42 false");
    }

    #[test]
    fn s2_x_t2_morse_jump() {
        let m = SubmersionModel::s2_x_t2();
        let scan = degeneracy_values(&m, &Scalar::ratio(1, 10), &Scalar::ratio(1, 5)).unwrap();
        let r = &scan.records[0];
        assert!((r.t_approx - 0.12995).abs() < 1e-4);
        let nb = neighborhood(&m, r).unwrap();
        let last = scan.records.last().unwrap();
        assert_eq!(last.eta, Scalar::pi2() * s(4));
        let nb_last = neighborhood(&m, last).unwrap();
        assert_eq!(morse_index_product(&m, &nb_last.t_right).unwrap(), 0);
        assert_eq!(morse_index_product(&m, &nb_last.t_left).unwrap(), 4);
        assert!(morse_index_product(&m, &nb.t_left).unwrap() > morse_index_product(&m, &nb.t_right).unwrap());
        assert_eq!(morse_index_product(&m, &Scalar::one()).unwrap(), 0);
    }

    #[test]
    fn grids() {
        let g = log_grid(&Scalar::ratio(1, 20), &Scalar::one(), 64).unwrap();
        assert_eq!(g.len(), 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g[0], Scalar::ratio(1, 20));
        assert_eq!(linear_grid(&Scalar::ratio(1, 2), &Scalar::one(), 2).unwrap().len(), 2);
        assert!(log_grid(&Scalar::ratio(1, 2), &Scalar::one(), 1).is_err());
    }

    #[test]
    fn record_json_round_trip() {
        let m = SubmersionModel::quaternionic_hopf();
        for r in first_degeneracies(&m, 4, &Scalar::one()).unwrap() {
            let json = serde_json::to_string(&r).unwrap();
            let back: DegeneracyRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back, r);
        }
    }
}
