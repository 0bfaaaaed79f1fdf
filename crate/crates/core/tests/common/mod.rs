//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's spectra or solvers; `Scalar` is only used to hand
//! results back in a comparable form.
#![allow(dead_code)]

use std::collections::BTreeMap;

use collapse_spectra::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

// π to 50 decimals
const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `(lo, hi)` with `lo < π² < hi`.
pub fn pi_squared_bracket() -> (BigRational, BigRational) {
    let digits: String = PI_50.chars().filter(|c| *c != '.').collect();
    let scale = BigInt::from(10u32).pow(50);
    let lo = BigRational::new(digits.parse::<BigInt>().unwrap(), scale.clone());
    let hi = &lo + BigRational::new(BigInt::one(), scale);
    (&lo * &lo, &hi * &hi)
}

/// Decides `r + c·π² < level`, panicking if 50 digits cannot tell.
pub fn below(r: &BigRational, c: &BigRational, level: &BigRational) -> bool {
    let (lo, hi) = pi_squared_bracket();
    let (a, b) = (r + c * &lo, r + c * &hi);
    let (min, max) = if a <= b { (a, b) } else { (b, a) };
    if max < *level {
        true
    } else if min >= *level {
        false
    } else {
        panic!("{r} + {c}·π² too close to {level}")
    }
}

/// `S²(1) × ℝ²/ℤ²` with fibers scaled by `t`: all eigenvalues
/// `k(k+1)/t² + 4π²|v|² < level`, by direct enumeration of degrees and
/// integer vectors.
pub fn s2_x_t2_spectrum(t: &BigRational, level: &BigRational) -> Vec<(Scalar, u64)> {
    let t2 = t * t;
    let mut merged: BTreeMap<(BigRational, i64), u64> = BTreeMap::new();
    let mut k = 0i64;
    loop {
        let vertical = q(k * (k + 1), 1) / &t2;
        if &vertical >= level {
            break;
        }
        let mult = (2 * k + 1) as u64;
        // 4π²·n ≥ 39·n, so |v|² < level/39 bounds the box
        let bound = (level / q(39, 1)).to_integer().to_string().parse::<i64>().unwrap();
        let side = (bound as f64).sqrt() as i64 + 1;
        for x in -side..=side {
            for y in -side..=side {
                let n = x * x + y * y;
                if below(&vertical, &q(4 * n, 1), level) {
                    *merged.entry((vertical.clone(), n)).or_default() += mult;
                }
            }
        }
        k += 1;
    }
    let mut out: Vec<(Scalar, u64)> = merged
        .into_iter()
        .map(|((r, n), m)| (Scalar::from_rational(r) + Scalar::pi2() * Scalar::from_int(4 * n), m))
        .collect();
    out.sort();
    out
}

/// Sums of two squares with their representation counts, `n ≤ limit`.
pub fn two_square_counts(limit: i64) -> BTreeMap<i64, u64> {
    let side = (limit as f64).sqrt() as i64 + 1;
    let mut out = BTreeMap::new();
    for x in -side..=side {
        for y in -side..=side {
            let n = x * x + y * y;
            if n > 0 && n <= limit {
                *out.entry(n).or_default() += 1;
            }
        }
    }
    out
}

/// Positive root of `α u² + β u + γ = 0` in floating point, for `αγ < 0`
/// or `α = 0`.
pub fn float_root(alpha: f64, beta: f64, gamma: f64) -> f64 {
    if alpha == 0.0 {
        return -gamma / beta;
    }
    let disc = (beta * beta - 4.0 * alpha * gamma).sqrt();
    (-beta + disc) / (2.0 * alpha)
}

pub fn weyl_sp(rank: usize, k: i64) -> BigRational {
    // Sp(rank), highest weight k(ε₁ + ε₂), ρ = (rank, …, 1)
    let rho: Vec<i64> = (1..=rank as i64).rev().collect();
    let mut shifted = rho.clone();
    shifted[0] += k;
    shifted[1] += k;
    let frac = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let mut acc = BigRational::one();
    for i in 0..rank {
        for j in i + 1..rank {
            acc *= frac(shifted[i] - shifted[j], rho[i] - rho[j]);
            acc *= frac(shifted[i] + shifted[j], rho[i] + rho[j]);
        }
        acc *= frac(shifted[i], rho[i]);
    }
    acc
}

pub fn zero() -> BigRational {
    BigRational::zero()
}
