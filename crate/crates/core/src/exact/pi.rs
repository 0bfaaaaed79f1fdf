//! Certified rational enclosures of π².
//!
//! Level 0 is a fixed 17-digit decimal bracket. Every further level doubles
//! the working precision of a fixed-point Machin evaluation, so enclosure
//! widths shrink roughly like `2^-(64·2^level)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Highest refinement level; 2^16 bits of π is far beyond anything a sign
/// decision on small-degree polynomials needs.
pub const MAX_LEVEL: usize = 10;

static LEVELS: [OnceLock<(BigRational, BigRational)>; MAX_LEVEL + 1] =
    [const { OnceLock::new() }; MAX_LEVEL + 1];

/// Returns `(lo, hi)` with `lo < π² < hi`.
pub fn pi_squared_enclosure(level: usize) -> &'static (BigRational, BigRational) {
    let level = level.min(MAX_LEVEL);
    LEVELS[level].get_or_init(|| {
        if level == 0 {
            let den = BigInt::from(10u64).pow(16);
            (
                BigRational::new(BigInt::from(98_696_044_010_893_586u64), den.clone()),
                BigRational::new(BigInt::from(98_696_044_010_893_587u64), den),
            )
        } else {
            let (lo, hi) = pi_enclosure(64usize << level);
            (&lo * &lo, &hi * &hi)
        }
    })
}

/// Enclosure of π from Machin's formula evaluated in `bits`-bit fixed point.
fn pi_enclosure(bits: usize) -> (BigRational, BigRational) {
    let one = BigInt::one() << bits;
    let (a5, n5) = arctan_inv(5, &one);
    let (a239, n239) = arctan_inv(239, &one);
    let approx = a5 * 16 - a239 * 4;
    // every truncated term is off by less than one unit in the last place
    let slack = BigInt::from(16 * (n5 + 2) + 4 * (n239 + 2));
    let lo = BigRational::new(&approx - &slack, one.clone());
    let hi = BigRational::new(approx + slack, one);
    (lo, hi)
}

/// `floor`-truncated fixed-point arctan(1/x) and the number of terms used.
fn arctan_inv(x: u32, one: &BigInt) -> (BigInt, usize) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = one / &x;
    let mut sum = BigInt::zero();
    let mut n = 0usize;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        n += 1;
    }
    (sum, n)
}
