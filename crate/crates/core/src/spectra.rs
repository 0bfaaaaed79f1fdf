//! Closed-form Laplace–Beltrami spectra of the catalog spaces.
//!
//! A [`SpectrumStream`] yields `(eigenvalue, multiplicity)` pairs in strictly
//! increasing order, generating lazily and caching what it has produced.
//! Projective-space multiplicities are counts of invariant spherical
//! harmonics under the Hopf actions, with metrics normalized so that the Hopf
//! submersion from the unit sphere is Riemannian.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::Scalar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub value: Scalar,
    pub multiplicity: u64,
}

impl EigenvalueEntry {
    pub fn new(value: Scalar, multiplicity: u64) -> Self {
        EigenvalueEntry { value, multiplicity }
    }
}

fn one() -> Scalar {
    Scalar::one()
}

/// A space whose Laplace spectrum is known in closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpaceDescriptor {
    /// Round `S^n` of the given radius.
    Sphere {
        n: u32,
        #[serde(default = "one")]
        radius: Scalar,
    },
    /// `ℝ^d/Λ` where `gram` is the Gram matrix of a basis of `Λ`.
    FlatTorus { gram: Vec<Vec<Scalar>> },
    /// `CP^n` as the base of `S¹ → S^{2n+1}(1) → CP^n`.
    ComplexProjective { n: u32 },
    /// `HP^n` as the base of `S³ → S^{4n+3}(1) → HP^n`.
    QuaternionicProjective { n: u32 },
    /// `SO(3) = S³(radius)/ℤ₂`.
    #[serde(rename = "so3")]
    So3 {
        #[serde(default = "one")]
        radius: Scalar,
    },
    /// A finite list known to be complete below `valid_below`.
    Explicit {
        entries: Vec<EigenvalueEntry>,
        #[serde(rename = "validBelow")]
        valid_below: Scalar,
    },
}

impl SpaceDescriptor {
    pub fn sphere(n: u32, radius: Scalar) -> Self {
        SpaceDescriptor::Sphere { n, radius }
    }

    pub fn unit_sphere(n: u32) -> Self {
        SpaceDescriptor::Sphere { n, radius: Scalar::one() }
    }

    /// The torus `ℝ^d/ℤ^d`.
    pub fn unit_torus(d: usize) -> Self {
        let gram = (0..d)
            .map(|i| (0..d).map(|j| Scalar::from_int((i == j) as i64)).collect())
            .collect();
        SpaceDescriptor::FlatTorus { gram }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        match self {
            SpaceDescriptor::Sphere { n, radius } => {
                if *n < 1 {
                    return bad("sphere dimension must be at least 1".into());
                }
                if !radius.is_positive() {
                    return bad(format!("sphere radius must be positive, got {radius}"));
                }
            }
            SpaceDescriptor::So3 { radius } => {
                if !radius.is_positive() {
                    return bad(format!("SO(3) radius must be positive, got {radius}"));
                }
            }
            SpaceDescriptor::ComplexProjective { n } | SpaceDescriptor::QuaternionicProjective { n } => {
                if *n < 1 {
                    return bad("projective space dimension must be at least 1".into());
                }
            }
            SpaceDescriptor::FlatTorus { gram } => {
                rational_gram(gram)?;
            }
            SpaceDescriptor::Explicit { entries, valid_below } => {
                let Some(first) = entries.first() else {
                    return bad("explicit spectrum must list at least the zero eigenvalue".into());
                };
                if !first.value.is_zero() {
                    return bad("explicit spectrum must start with the eigenvalue 0".into());
                }
                for pair in entries.windows(2) {
                    if pair[1].value <= pair[0].value {
                        return bad(format!(
                            "explicit eigenvalues must be strictly increasing ({} then {})",
                            pair[0].value, pair[1].value
                        ));
                    }
                }
                if let Some(e) = entries.iter().find(|e| e.multiplicity == 0) {
                    return bad(format!("eigenvalue {} has multiplicity 0", e.value));
                }
                if let Some(last) = entries.last() {
                    if last.value >= *valid_below {
                        return bad(format!(
                            "entry {} is not below validBelow {valid_below}",
                            last.value
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Manifold dimension, when the descriptor determines it.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            SpaceDescriptor::Sphere { n, .. } => Some(*n as usize),
            SpaceDescriptor::FlatTorus { gram } => Some(gram.len()),
            SpaceDescriptor::ComplexProjective { n } => Some(2 * *n as usize),
            SpaceDescriptor::QuaternionicProjective { n } => Some(4 * *n as usize),
            SpaceDescriptor::So3 { .. } => Some(3),
            SpaceDescriptor::Explicit { .. } => None,
        }
    }

    /// Scalar curvature of the catalog metric, when known.
    pub fn catalog_scal(&self) -> Option<Scalar> {
        match self {
            SpaceDescriptor::Sphere { n, radius } => {
                let n = *n as i64;
                Some(Scalar::from_int(n * (n - 1)) / radius.square())
            }
            SpaceDescriptor::FlatTorus { .. } => Some(Scalar::zero()),
            SpaceDescriptor::ComplexProjective { n } => {
                let n = *n as i64;
                Some(Scalar::from_int(4 * n * (n + 1)))
            }
            SpaceDescriptor::QuaternionicProjective { n } => {
                let n = *n as i64;
                Some(Scalar::from_int(16 * n * (n + 2)))
            }
            SpaceDescriptor::So3 { radius } => Some(Scalar::from_int(6) / radius.square()),
            SpaceDescriptor::Explicit { .. } => None,
        }
    }
}

/// Checks symmetry and positive definiteness; returns the rational matrix.
fn rational_gram(gram: &[Vec<Scalar>]) -> Result<Vec<Vec<BigRational>>> {
    let d = gram.len();
    let bad = |msg: &str| Error::InvalidDescriptor(format!("flat torus gram matrix: {msg}"));
    if d == 0 {
        return Err(bad("empty"));
    }
    let mut m = Vec::with_capacity(d);
    for row in gram {
        if row.len() != d {
            return Err(bad("not square"));
        }
        let row: Option<Vec<_>> = row.iter().map(Scalar::to_rational).collect();
        m.push(row.ok_or_else(|| bad("entries must be rational"))?);
    }
    for i in 0..d {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(bad("not symmetric"));
            }
        }
    }
    // positive definite iff all pivots of symmetric elimination are positive
    let mut a = m.clone();
    for k in 0..d {
        if !a[k][k].is_positive() {
            return Err(bad("not positive definite"));
        }
        for i in k + 1..d {
            let f = &a[i][k] / &a[k][k];
            for j in k..d {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    Ok(m)
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let d = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for k in 0..d {
        let p = (k..d).find(|&i| !a[i][k].is_zero()).expect("nonsingular");
        a.swap(k, p);
        let piv = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v /= &piv;
        }
        for i in 0..d {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * d {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[d..].to_vec()).collect()
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Dimension of degree-`k` spherical harmonics on `S^n`.
pub fn sphere_multiplicity(n: u32, k: u64) -> u64 {
    let (n, k) = (n as i64, k as i64);
    (binom(n + k, k) - binom(n + k - 2, k - 2)).to_u64().expect("multiplicity overflow")
}

/// Harmonic polynomials on `ℂ^dim` of bidegree `(p, q)` in `(z, z̄)`.
fn complex_harmonic_dim(dim: i64, p: i64, q: i64) -> BigInt {
    if p < 0 || q < 0 {
        return BigInt::zero();
    }
    binom(p + dim - 1, p) * binom(q + dim - 1, q) - binom(p + dim - 2, p - 1) * binom(q + dim - 2, q - 1)
}

/// Multiplicity of `4k(k+n)` on `CP^n`: S¹-invariant harmonics of degree 2k
/// on `S^{2n+1}`, i.e. bidegree `(k, k)`.
pub fn complex_projective_multiplicity(n: u32, k: u64) -> u64 {
    complex_harmonic_dim(n as i64 + 1, k as i64, k as i64)
        .to_u64()
        .expect("multiplicity overflow")
}

/// Multiplicity of `4k(k+2n+1)` on `HP^n`: Sp(1)-invariant harmonics of
/// degree 2k on `S^{4n+3}`. Inside bidegree `(k, k)` (the U(1)-weight-zero
/// part) the invariants are the weight-zero vectors minus the weight-two
/// vectors, the latter being bidegree `(k+1, k−1)`.
pub fn quaternionic_projective_multiplicity(n: u32, k: u64) -> u64 {
    let dim = 2 * n as i64 + 2;
    let (k, kk) = (k as i64, k as i64);
    (complex_harmonic_dim(dim, k, kk) - complex_harmonic_dim(dim, k + 1, kk - 1))
        .to_u64()
        .expect("multiplicity overflow")
}

#[derive(Clone, Debug)]
enum Source {
    Sphere { n: u32, radius_sq: Scalar, next_k: u64 },
    ComplexProjective { n: u32, next_k: u64 },
    QuaternionicProjective { n: u32, next_k: u64 },
    So3 { radius_sq: Scalar, next_k: u64 },
    Torus(TorusShells),
    Explicit { entries: Vec<EigenvalueEntry>, pos: usize },
}

/// Dual-lattice enumeration in expanding shells of the integer form
/// `x ↦ xᵀ M x` with `M = D·G⁻¹`.
#[derive(Clone, Debug)]
struct TorusShells {
    form: Vec<Vec<i128>>,
    denom: BigInt,
    gram_diag: Vec<BigRational>,
    done_below: Option<i128>,
    pending: std::collections::VecDeque<EigenvalueEntry>,
}

impl TorusShells {
    fn new(gram: &[Vec<BigRational>]) -> Result<Self> {
        let inv = invert(gram);
        let denom = inv
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, r| num_integer::lcm(acc, r.denom().clone()));
        let dr = BigRational::from_integer(denom.clone());
        let form = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| (r * &dr).to_integer().to_i128())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidDescriptor("dual gram matrix entries too large".into()))?;
        let gram_diag = (0..gram.len()).map(|i| gram[i][i].clone()).collect();
        Ok(TorusShells { form, denom, gram_diag, done_below: None, pending: Default::default() })
    }

    fn quadratic(&self, x: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, row) in self.form.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                acc += m * x[i] as i128 * x[j] as i128;
            }
        }
        acc
    }

    /// Enumerate lattice vectors with `done_below < q ≤ bound`.
    fn fill(&mut self, bound: i128) {
        let d = self.form.len();
        let limit_ratio = BigRational::new(BigInt::from(bound), self.denom.clone());
        let boxes: Vec<i64> = self
            .gram_diag
            .iter()
            .map(|g| {
                let r = (&limit_ratio * g).floor().to_integer();
                r.sqrt().to_i64().expect("lattice search box too large")
            })
            .collect();
        let mut counts: BTreeMap<i128, u64> = BTreeMap::new();
        let mut x = vec![0i64; d];
        for (i, b) in boxes.iter().enumerate() {
            x[i] = -b;
        }
        loop {
            let q = self.quadratic(&x);
            if q <= bound && self.done_below.is_none_or(|lo| q > lo) {
                *counts.entry(q).or_default() += 1;
            }
            let mut i = 0;
            loop {
                if i == d {
                    let four_pi2 = Scalar::pi2() * Scalar::from_int(4);
                    for (q, mult) in counts {
                        let r = BigRational::new(BigInt::from(q), self.denom.clone());
                        self.pending.push_back(EigenvalueEntry::new(&four_pi2 * Scalar::from(r), mult));
                    }
                    self.done_below = Some(bound);
                    return;
                }
                if x[i] < boxes[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = -boxes[i];
                i += 1;
            }
        }
    }

    fn next(&mut self) -> EigenvalueEntry {
        while self.pending.is_empty() {
            let bound = match self.done_below {
                None => 0,
                Some(b) => (2 * b).max(b + self.denom.to_i128().unwrap_or(1)).max(1),
            };
            self.fill(bound);
        }
        self.pending.pop_front().unwrap()
    }
}

/// Lazily generated, exact, strictly increasing spectrum.
#[derive(Clone, Debug)]
pub struct SpectrumStream {
    source: Source,
    scale: Scalar,
    generated: Vec<EigenvalueEntry>,
    valid_below: Option<Scalar>,
}

/// The spectrum of a catalog space.
pub fn spectrum_of(space: &SpaceDescriptor) -> Result<SpectrumStream> {
    space.validate()?;
    let source = match space {
        SpaceDescriptor::Sphere { n, radius } => {
            Source::Sphere { n: *n, radius_sq: radius.square(), next_k: 0 }
        }
        SpaceDescriptor::ComplexProjective { n } => Source::ComplexProjective { n: *n, next_k: 0 },
        SpaceDescriptor::QuaternionicProjective { n } => {
            Source::QuaternionicProjective { n: *n, next_k: 0 }
        }
        SpaceDescriptor::So3 { radius } => Source::So3 { radius_sq: radius.square(), next_k: 0 },
        SpaceDescriptor::FlatTorus { gram } => Source::Torus(TorusShells::new(&rational_gram(gram)?)?),
        SpaceDescriptor::Explicit { entries, .. } => Source::Explicit { entries: entries.clone(), pos: 0 },
    };
    let valid_below = match space {
        SpaceDescriptor::Explicit { valid_below, .. } => Some(valid_below.clone()),
        _ => None,
    };
    Ok(SpectrumStream { source, scale: Scalar::one(), generated: Vec::new(), valid_below })
}

impl SpectrumStream {
    /// The spectrum of the same space with metric multiplied by `scale`:
    /// every eigenvalue is divided by `scale`.
    pub fn rescaled(mut self, scale: &Scalar) -> Self {
        assert!(scale.is_positive(), "metric scale must be positive");
        self.scale = &self.scale * scale;
        for e in &mut self.generated {
            e.value = &e.value / scale;
        }
        if let Some(vb) = &mut self.valid_below {
            *vb = &*vb / scale;
        }
        self
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    /// `Some(T_max)` for explicit lists.
    pub fn valid_below(&self) -> Option<&Scalar> {
        self.valid_below.as_ref()
    }

    fn exhausted(&self) -> Error {
        Error::SpectrumExhausted { valid_below: self.valid_below.clone().unwrap_or_default() }
    }

    fn generate(&mut self) -> Result<()> {
        let raw = match &mut self.source {
            Source::Sphere { n, radius_sq, next_k } => {
                let k = *next_k;
                *next_k += 1;
                let value = Scalar::from_int((k * (k + *n as u64 - 1)) as i64) / &*radius_sq;
                EigenvalueEntry::new(value, sphere_multiplicity(*n, k))
            }
            Source::ComplexProjective { n, next_k } => {
                let k = *next_k;
                *next_k += 1;
                let value = Scalar::from_int((4 * k * (k + *n as u64)) as i64);
                EigenvalueEntry::new(value, complex_projective_multiplicity(*n, k))
            }
            Source::QuaternionicProjective { n, next_k } => {
                let k = *next_k;
                *next_k += 1;
                let value = Scalar::from_int((4 * k * (k + 2 * *n as u64 + 1)) as i64);
                EigenvalueEntry::new(value, quaternionic_projective_multiplicity(*n, k))
            }
            Source::So3 { radius_sq, next_k } => {
                let k = *next_k;
                *next_k += 2;
                let value = Scalar::from_int((k * (k + 2)) as i64) / &*radius_sq;
                EigenvalueEntry::new(value, (k + 1) * (k + 1))
            }
            Source::Torus(shells) => shells.next(),
            Source::Explicit { entries, pos } => {
                let Some(e) = entries.get(*pos) else {
                    return Err(self.exhausted());
                };
                *pos += 1;
                e.clone()
            }
        };
        let value = if self.scale == Scalar::one() { raw.value } else { raw.value / &self.scale };
        self.generated.push(EigenvalueEntry::new(value, raw.multiplicity));
        Ok(())
    }

    /// The `i`-th entry (0-based; entry 0 is the constant eigenvalue).
    pub fn entry(&mut self, i: usize) -> Result<&EigenvalueEntry> {
        while self.generated.len() <= i {
            self.generate()?;
        }
        Ok(&self.generated[i])
    }

    /// The first `count` entries.
    pub fn take_entries(&mut self, count: usize) -> Result<Vec<EigenvalueEntry>> {
        if count > 0 {
            self.entry(count - 1)?;
        }
        Ok(self.generated[..count].to_vec())
    }

    /// The smallest positive eigenvalue.
    pub fn first_positive(&mut self) -> Result<EigenvalueEntry> {
        let mut i = 0;
        loop {
            let e = self.entry(i)?;
            if e.value.is_positive() {
                return Ok(e.clone());
            }
            i += 1;
        }
    }

    /// Makes sure every eigenvalue below `level` (or `≤ level` when not
    /// `strict`) has been generated.
    fn cover(&mut self, level: &Scalar, strict: bool) -> Result<()> {
        if let Some(vb) = &self.valid_below {
            let beyond = if strict { level > vb } else { level >= vb };
            if beyond {
                return Err(self.exhausted());
            }
            // the whole list is complete below validBelow
            while matches!(&self.source, Source::Explicit { entries, pos } if *pos < entries.len()) {
                self.generate()?;
            }
            return Ok(());
        }
        loop {
            let covered = match self.generated.last() {
                Some(last) => {
                    if strict {
                        last.value >= *level
                    } else {
                        last.value > *level
                    }
                }
                None => false,
            };
            if covered {
                return Ok(());
            }
            self.generate()?;
        }
    }

    /// Positive eigenvalues below `level` (`< level`, or `≤ level` when not strict).
    pub fn eigenvalues_below(&mut self, level: &Scalar, strict: bool) -> Result<Vec<EigenvalueEntry>> {
        if !level.is_positive() {
            return Ok(Vec::new());
        }
        self.cover(level, strict)?;
        Ok(self
            .generated
            .iter()
            .filter(|e| e.value.is_positive())
            .take_while(|e| if strict { e.value < *level } else { e.value <= *level })
            .cloned()
            .collect())
    }

    /// Total multiplicity of positive eigenvalues below `level`.
    pub fn counting_below(&mut self, level: &Scalar, strict: bool) -> Result<u64> {
        Ok(self.eigenvalues_below(level, strict)?.iter().map(|e| e.multiplicity).sum())
    }

    /// All entries, including 0, with value `< level`.
    pub fn entries_below(&mut self, level: &Scalar) -> Result<Vec<EigenvalueEntry>> {
        if !level.is_positive() {
            return Ok(Vec::new());
        }
        self.cover(level, true)?;
        Ok(self.generated.iter().take_while(|e| e.value < *level).cloned().collect())
    }
}

/// Free-function form of [`SpectrumStream::eigenvalues_below`].
pub fn eigenvalues_below(stream: &mut SpectrumStream, level: &Scalar, strict: bool) -> Result<Vec<EigenvalueEntry>> {
    stream.eigenvalues_below(level, strict)
}

/// Free-function form of [`SpectrumStream::counting_below`].
pub fn counting_below(stream: &mut SpectrumStream, level: &Scalar, strict: bool) -> Result<u64> {
    stream.counting_below(level, strict)
}
