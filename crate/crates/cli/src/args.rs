use collapse_spectra::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact scalar from the command line. Besides the model-file forms
/// (`3/2`, `pi2*4`) a terminating decimal such as `0.35` is accepted and
/// read exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    if let Some((whole, frac)) = text.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole),
        };
        let digits_only = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if frac.is_empty() || !digits_only(whole) || !digits_only(frac) {
            return Err(format!("invalid decimal {text:?}"));
        }
        let num: BigInt = format!("{whole}{frac}").parse().map_err(|e| format!("{text:?}: {e}"))?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let value = BigRational::new(if negative { -num } else { num }, den);
        return Ok(Scalar::from_rational(value));
    }
    text.parse().map_err(|e: collapse_spectra::exact::ParseScalarError| e.to_string())
}

/// A rational as a terminating decimal when it has one, else in the usual
/// `p/q` form.
pub fn exact_decimal(value: &Scalar) -> String {
    let Some(r) = value.to_rational() else {
        return value.to_string();
    };
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two) == BigInt::from(0u32) {
        den /= &two;
        twos += 1;
    }
    while (&den % &five) == BigInt::from(0u32) {
        den /= &five;
        fives += 1;
    }
    if den != BigInt::from(1u32) {
        return value.to_string();
    }
    let places = twos.max(fives);
    if places == 0 {
        return r.numer().to_string();
    }
    let scaled = (r.clone() * BigRational::from_integer(BigInt::from(10u32).pow(places))).to_integer();
    let negative = scaled < BigInt::from(0u32);
    let digits = scaled.magnitude().to_string();
    let digits = format!("{digits:0>width$}", width = places as usize + 1);
    let (whole, frac) = digits.split_at(digits.len() - places as usize);
    format!("{}{whole}.{frac}", if negative { "-" } else { "" })
}
