use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::pi::MAX_LEVEL;
use super::Scalar;

/// A real number `rational + coefficient·√radicand` with all three parts in
/// ℚ(π²) and `radicand ≥ 0`.
///
/// Roots of the quadratics that govern degeneracy values and s_max all have
/// this form. Comparison is exact: two surds with unrelated radicands are
/// ordered by repeated squaring, never by floating point.
#[derive(Clone, Serialize, Deserialize)]
pub struct QuadSurd {
    rational: Scalar,
    coefficient: Scalar,
    radicand: Scalar,
}

impl QuadSurd {
    /// Panics when `radicand < 0`.
    pub fn new(rational: Scalar, coefficient: Scalar, radicand: Scalar) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        let mut out = QuadSurd { rational, coefficient, radicand };
        out.normalize();
        out
    }

    pub fn from_scalar(x: Scalar) -> Self {
        QuadSurd { rational: x, coefficient: Scalar::zero(), radicand: Scalar::zero() }
    }

    /// `√x` for `x ≥ 0`.
    pub fn sqrt(x: Scalar) -> Self {
        QuadSurd::new(Scalar::zero(), Scalar::one(), x)
    }

    pub fn rational_part(&self) -> &Scalar {
        &self.rational
    }

    pub fn coefficient(&self) -> &Scalar {
        &self.coefficient
    }

    pub fn radicand(&self) -> &Scalar {
        &self.radicand
    }

    /// The value as an element of ℚ(π²), when the radical part vanishes.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        self.coefficient.is_zero().then_some(&self.rational)
    }

    fn normalize(&mut self) {
        if self.coefficient.is_zero() || self.radicand.is_zero() {
            self.coefficient = Scalar::zero();
            self.radicand = Scalar::zero();
            return;
        }
        // pull square factors out of rational radicands: √(a/b) = √(ab)/b
        if let Some(r) = self.radicand.to_rational() {
            let n = r.numer() * r.denom();
            let (square_root, free) = split_square(&n);
            let factor =
                BigRational::new(square_root, r.denom().clone());
            self.coefficient = &self.coefficient * &Scalar::from_rational(factor);
            if free.is_one() {
                self.rational = &self.rational + &self.coefficient;
                self.coefficient = Scalar::zero();
                self.radicand = Scalar::zero();
            } else {
                self.radicand = Scalar::from_rational(BigRational::from_integer(free));
            }
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        sign_one_radical(&self.rational, &self.coefficient, &self.radicand)
    }

    /// Multiply by an element of ℚ(π²).
    pub fn scale(&self, k: &Scalar) -> QuadSurd {
        QuadSurd::new(&self.rational * k, &self.coefficient * k, self.radicand.clone())
    }

    /// Add an element of ℚ(π²).
    pub fn shift(&self, k: &Scalar) -> QuadSurd {
        QuadSurd::new(&self.rational + k, self.coefficient.clone(), self.radicand.clone())
    }

    /// Square, which stays in the same quadratic extension.
    pub fn square(&self) -> QuadSurd {
        let p = &self.rational;
        let q = &self.coefficient;
        let d = &self.radicand;
        QuadSurd::new(
            p * p + q * q * d,
            Scalar::from_int(2) * p * q,
            d.clone(),
        )
    }

    /// Rational interval containing the value; tightens with `level`.
    pub fn enclose(&self, level: usize) -> (BigRational, BigRational) {
        let (pl, ph) = self.rational.enclose(level);
        if self.coefficient.is_zero() {
            return (pl, ph);
        }
        let (ql, qh) = self.coefficient.enclose(level);
        let (dl, dh) = self.radicand.enclose(level);
        let bits = 64usize << level;
        let sl = sqrt_lower(&dl.max(BigRational::zero()), bits);
        let sh = sqrt_upper(&dh, bits);
        let cands = [&ql * &sl, &ql * &sh, &qh * &sl, &qh * &sh];
        let lo = cands.iter().min().unwrap() + &pl;
        let hi = cands.iter().max().unwrap() + &ph;
        (lo, hi)
    }

    /// Advisory float value.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclose(1);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Advisory float value of the square root (used for `t = √u`).
    pub fn sqrt_f64(&self) -> f64 {
        self.to_f64().max(0.0).sqrt()
    }
}

impl From<Scalar> for QuadSurd {
    fn from(x: Scalar) -> Self {
        QuadSurd::from_scalar(x)
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.rational - &other.rational;
        if self.radicand == other.radicand || other.coefficient.is_zero() {
            let c = &self.coefficient - if other.coefficient.is_zero() {
                Scalar::zero()
            } else {
                other.coefficient.clone()
            };
            let d = if self.coefficient.is_zero() { &other.radicand } else { &self.radicand };
            return sign_one_radical(&a, &c, d);
        }
        if self.coefficient.is_zero() {
            return sign_one_radical(&a, &(-&other.coefficient), &other.radicand);
        }
        sign_two_radicals(
            &a,
            &self.coefficient,
            &self.radicand,
            &(-&other.coefficient),
            &other.radicand,
        )
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadSurd {}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let radical = if self.coefficient == Scalar::one() {
            format!("sqrt({})", self.radicand)
        } else if self.coefficient.to_rational().is_some_and(|c| c.is_integer()) {
            format!("{}*sqrt({})", self.coefficient, self.radicand)
        } else {
            format!("({})*sqrt({})", self.coefficient, self.radicand)
        };
        if self.rational.is_zero() {
            f.write_str(&radical)
        } else {
            write!(f, "{} + {}", self.rational, radical)
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadSurd({self} ≈ {})", self.to_f64())
    }
}

/// sign(p + q·√d), d ≥ 0.
fn sign_one_radical(p: &Scalar, q: &Scalar, d: &Scalar) -> Ordering {
    let sp = p.signum();
    let sq = if d.is_zero() { Ordering::Equal } else { q.signum() };
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: the larger magnitude wins
    match (p * p - q * q * d).signum() {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

/// sign(a + b·√d1 + c·√d2), d1, d2 ≥ 0.
fn sign_two_radicals(a: &Scalar, b: &Scalar, d1: &Scalar, c: &Scalar, d2: &Scalar) -> Ordering {
    // sign of s = b√d1 + c√d2
    let sb = if d1.is_zero() { Ordering::Equal } else { b.signum() };
    let sc = if d2.is_zero() { Ordering::Equal } else { c.signum() };
    let s = if sb == Ordering::Equal {
        sc
    } else if sc == Ordering::Equal || sb == sc {
        sb
    } else {
        match (b * b * d1 - c * c * d2).signum() {
            Ordering::Greater => sb,
            Ordering::Less => sc,
            Ordering::Equal => Ordering::Equal,
        }
    };
    let sa = a.signum();
    if s == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == s {
        return s;
    }
    // a and s have opposite signs: compare a² with s² = b²d1 + c²d2 + 2bc√(d1d2)
    let p = a * a - b * b * d1 - c * c * d2;
    let q = -(Scalar::from_int(2) * b * c);
    match sign_one_radical(&p, &q, &(d1 * d2)) {
        Ordering::Greater => sa,
        Ordering::Less => s,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Writes `n = s²·f` pulling out square factors of primes below 10⁵.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut free = n.abs();
    let mut root = BigInt::one();
    if free.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= free && p < limit {
        let p2 = &p * &p;
        while (&free % &p2).is_zero() {
            free /= &p2;
            root *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    // a remaining perfect square factor larger than the trial bound
    let r = free.sqrt();
    if &r * &r == free {
        root *= &r;
        free = BigInt::one();
    }
    (root, free)
}

/// Largest dyadic `k/2^bits ≤ √x`, for `x ≥ 0`.
pub(crate) fn sqrt_lower(x: &BigRational, bits: usize) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let scaled = (x * BigRational::from_integer(scale)).floor().to_integer();
    BigRational::new(scaled.sqrt(), BigInt::one() << bits)
}

/// A dyadic upper bound for `√x`, within `2^-bits` of it.
pub(crate) fn sqrt_upper(x: &BigRational, bits: usize) -> BigRational {
    let scale = BigInt::one() << (2 * bits);
    let scaled = (x * BigRational::from_integer(scale)).ceil().to_integer();
    let r = scaled.sqrt();
    let r = if &r * &r == scaled { r } else { r + 1 };
    BigRational::new(r, BigInt::one() << bits)
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo < hi, "empty interval");
    if !lo.is_positive() && hi.is_positive() {
        return BigRational::zero();
    }
    if hi.is_negative() || hi.is_zero() {
        return -simplest_between(&-hi, &-lo);
    }
    let k = lo.floor();
    let next = &k + BigRational::one();
    if &next < hi {
        return next;
    }
    // lo and hi share the integer part k, with hi ≤ k + 1
    let flo = lo - &k;
    let fhi = hi - &k;
    let inner_lo = fhi.recip();
    let inner = if flo.is_zero() {
        inner_lo.floor() + BigRational::one()
    } else {
        simplest_between(&inner_lo, &flo.recip())
    };
    k + inner.recip()
}

/// A simple rational strictly between `a < b`.
pub fn rational_between(a: &QuadSurd, b: &QuadSurd) -> BigRational {
    assert!(a < b, "rational_between needs a < b");
    for level in 0..=MAX_LEVEL {
        let (_, ahi) = a.enclose(level);
        let (blo, _) = b.enclose(level);
        if ahi < blo {
            return simplest_between(&ahi, &blo);
        }
    }
    unreachable!("distinct surds separate before maximal precision")
}

/// A simple rational `t > 0` with `a < t² < b`, for `0 ≤ a < b`.
pub fn rational_sqrt_between(a: &QuadSurd, b: &QuadSurd) -> BigRational {
    assert!(a < b && !b.signum().is_le(), "rational_sqrt_between needs 0 ≤ a < b");
    for level in 0..=MAX_LEVEL {
        let (_, ahi) = a.enclose(level);
        let (blo, _) = b.enclose(level);
        if ahi >= blo {
            continue;
        }
        let bits = 64usize << level;
        let lo = sqrt_upper(&ahi.max(BigRational::zero()), bits);
        let hi = sqrt_lower(&blo, bits);
        if lo < hi {
            return simplest_between(&lo, &hi);
        }
    }
    unreachable!("distinct surds separate before maximal precision")
}

/// Positive-root helper: all roots `u > 0` of `α u² + β u + γ = 0`, ascending.
pub fn positive_roots(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Vec<QuadSurd> {
    if alpha.is_zero() {
        if beta.is_zero() {
            return Vec::new();
        }
        let u = -(gamma / beta);
        return if u.is_positive() { vec![QuadSurd::from_scalar(u)] } else { Vec::new() };
    }
    let disc = beta * beta - Scalar::from_int(4) * alpha * gamma;
    if disc.is_negative() {
        return Vec::new();
    }
    let two_alpha = Scalar::from_int(2) * alpha;
    let p = -(beta / &two_alpha);
    let q = Scalar::one() / &two_alpha;
    let mut roots = vec![
        QuadSurd::new(p.clone(), -&q, disc.clone()),
        QuadSurd::new(p, q, disc.clone()),
    ];
    if disc.is_zero() {
        roots.truncate(1);
    }
    roots.retain(|r| r.signum() == Ordering::Greater);
    roots.sort();
    roots.dedup();
    roots
}
