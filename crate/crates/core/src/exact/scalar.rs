use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::pi::MAX_LEVEL;
use super::poly::Poly;

/// An exact real number in the field ℚ(π²).
///
/// Stored as a reduced quotient of polynomials in π² with a monic
/// denominator, so structural equality is numeric equality. Plain rationals
/// are the overwhelmingly common case and take a fast path through every
/// operation; π² only enters through flat-torus spectra.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { num: Poly::constant(r), den: Poly::one() }
    }

    /// π².
    pub fn pi2() -> Self {
        Scalar { num: Poly::monomial(BigRational::one(), 1), den: Poly::one() }
    }

    /// `c · π^(2k)` for integer (possibly negative) `k`.
    pub fn pi2_power(c: BigRational, k: i32) -> Self {
        if k >= 0 {
            Scalar::from_parts(Poly::monomial(c, k as usize), Poly::one())
        } else {
            Scalar::from_parts(Poly::constant(c), Poly::monomial(BigRational::one(), (-k) as usize))
        }
    }

    fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(d) = den.as_constant() {
            return Scalar { num: num.scale(&d.recip()), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().recip();
        Scalar { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a rational number, if it does not involve π².
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let n = self.num.signum();
        if self.den.is_one() {
            n
        } else if self.den.signum() == Ordering::Less {
            n.reverse()
        } else {
            n
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Scalar {
        Scalar::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Rational interval containing the value; width shrinks with `level`.
    pub fn enclose(&self, level: usize) -> (BigRational, BigRational) {
        let (nl, nh) = self.num.enclose(level);
        if self.den.is_one() {
            return (nl, nh);
        }
        let mut level = level;
        let (dl, dh) = loop {
            let (dl, dh) = self.den.enclose(level);
            if dl.is_positive() || dh.is_negative() || level >= MAX_LEVEL {
                break (dl, dh);
            }
            level += 1;
        };
        let cands = [&nl / &dl, &nl / &dh, &nh / &dl, &nh / &dh];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        (lo, hi)
    }

    /// Nearest-ish `f64`; advisory only.
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.to_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let (lo, hi) = self.enclose(2);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<&BigRational> for Scalar {
    fn from(r: &BigRational) -> Self {
        Scalar::from_rational(r.clone())
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.to_rational(), other.to_rational()) {
            return a.cmp(&b);
        }
        (self - other).signum()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.add(&rhs.num), den: Poly::one() };
        }
        if self.den == rhs.den {
            return Scalar::from_parts(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::from_parts(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.mul(&rhs.num), den: Poly::one() };
        }
        Scalar::from_parts(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        if let Some(r) = rhs.to_rational() {
            return Scalar { num: self.num.scale(&r.recip()), den: self.den.clone() };
        }
        Scalar::from_parts(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

// ---------------------------------------------------------------------------
// Text form: "3/2", "pi2*4", "1/2 + pi2^2*3", "pi2^-1*1/6", "(1 + pi2)/(2 + pi2)"

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_terms(poly: &Poly, shift: i64) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in poly.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exp = i as i64 - shift;
        let negative = c.is_negative();
        let mag = c.abs();
        if first {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        first = false;
        match exp {
            0 => out.push_str(&fmt_rational(&mag)),
            _ => {
                out.push_str("pi2");
                if exp != 1 {
                    out.push_str(&format!("^{exp}"));
                }
                if !mag.is_one() {
                    out.push('*');
                    out.push_str(&fmt_rational(&mag));
                }
            }
        }
    }
    if first {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&fmt_terms(&self.num, 0))
        } else if let Some(k) = self.den.as_unit_monomial() {
            f.write_str(&fmt_terms(&self.num, k as i64))
        } else {
            write!(f, "({})/({})", fmt_terms(&self.num, 0), fmt_terms(&self.den, 0))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Malformed exact-scalar text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact scalar {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected digits at offset {start}"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, String> {
        let n = self.digits()?;
        if self.peek() == Some(b'/') && self.s.get(self.pos + 1).is_some_and(|c| *c != b'(') {
            self.pos += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            return Ok(BigRational::new(n, d));
        }
        if self.peek() == Some(b'.') || self.peek() == Some(b'e') || self.peek() == Some(b'E') {
            return Err("floating-point literals are not exact; write p/q".into());
        }
        Ok(BigRational::from_integer(n))
    }

    /// One signed term as `(coefficient, exponent of π²)`.
    fn term(&mut self) -> Result<(BigRational, i64), String> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(b"pi2") {
            self.pos += 3;
            let mut exp = 1i64;
            if self.eat(b'^') {
                let neg = self.eat(b'-');
                let e = self.digits()?;
                let e: i64 = e.try_into().map_err(|_| "exponent too large".to_string())?;
                exp = if neg { -e } else { e };
            }
            let coeff = if self.eat(b'*') { self.rational()? } else { BigRational::one() };
            Ok((coeff, exp))
        } else {
            Ok((self.rational()?, 0))
        }
    }

    fn sum(&mut self) -> Result<Vec<(BigRational, i64)>, String> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let (c, e) = self.term()?;
            terms.push((if negative { -c } else { c }, e));
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn expr(&mut self) -> Result<Scalar, String> {
        if self.eat(b'(') {
            let num = terms_to_scalar(self.sum()?);
            if !self.eat(b')') || !self.eat(b'/') || !self.eat(b'(') {
                return Err("expected ')/(' in quotient form".into());
            }
            let den = terms_to_scalar(self.sum()?);
            if !self.eat(b')') {
                return Err("expected ')'".into());
            }
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            return Ok(num / den);
        }
        Ok(terms_to_scalar(self.sum()?))
    }
}

fn terms_to_scalar(terms: Vec<(BigRational, i64)>) -> Scalar {
    terms
        .into_iter()
        .map(|(c, e)| Scalar::pi2_power(c, e as i32))
        .sum()
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let fail = |reason: String| ParseScalarError { input: s.to_string(), reason };
        let value = p.expr().map_err(fail)?;
        if p.peek().is_some() {
            return Err(fail(format!("trailing input at offset {}", p.pos)));
        }
        Ok(value)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts strings in the text form above, or JSON integers. JSON floats are
/// rejected so that model files cannot smuggle in rounded values.
impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match serde_json::Value::deserialize(deserializer)? {
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Scalar::from_int(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(Scalar::from_rational(BigRational::from_integer(u.into())))
                } else {
                    Err(D::Error::custom(format!(
                        "floating-point number {n} rejected; write exact values as \"p/q\""
                    )))
                }
            }
            other => Err(D::Error::custom(format!("expected an exact scalar, found {other}"))),
        }
    }
}
