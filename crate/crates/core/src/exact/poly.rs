//! Dense polynomials in x = π² with rational coefficients.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::pi::{pi_squared_enclosure, MAX_LEVEL};

/// Coefficient `i` multiplies `x^i`; no trailing zeros are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// `Some(k)` when the polynomial is exactly `x^k`.
    pub fn as_unit_monomial(&self) -> Option<usize> {
        let k = self.degree();
        (!self.is_zero() && self.0[k].is_one() && self.0[..k].iter().all(Zero::is_zero)).then_some(k)
    }

    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Poly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&lead.recip())
    }

    /// Interval enclosure of the value at π², using refinement `level`.
    pub fn enclose(&self, level: usize) -> (BigRational, BigRational) {
        if let Some(c) = self.as_constant() {
            return (c.clone(), c);
        }
        let (xl, xh) = pi_squared_enclosure(level);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let mut pl = BigRational::one();
        let mut ph = BigRational::one();
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                pl *= xl;
                ph *= xh;
            }
            if c.is_positive() {
                lo += c * &pl;
                hi += c * &ph;
            } else if c.is_negative() {
                lo += c * &ph;
                hi += c * &pl;
            }
        }
        (lo, hi)
    }

    /// Exact sign of the value at π². A nonzero polynomial never vanishes
    /// there, so refinement always terminates.
    pub fn signum(&self) -> Ordering {
        if let Some(c) = self.as_constant() {
            return c.cmp(&BigRational::zero());
        }
        for level in 0..=MAX_LEVEL {
            let (lo, hi) = self.enclose(level);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
        }
        panic!("sign of {self:?} at pi^2 not resolved at maximal precision")
    }
}

#[cfg(test)]
fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
