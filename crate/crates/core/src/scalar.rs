//! Exact rational scalars and their text form.

use std::cmp::Ordering;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always kept reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of `v` as an `Ordering` against zero.
pub fn sign(v: &Scalar) -> Ordering {
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; fall back to scaled division
        let n = v.numer().bits() as i64;
        let d = v.denom().bits() as i64;
        let shift = n.max(d) - 1000;
        let num = (v.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let den = (v.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        num / den
    })
}

/// Exact conversion of a finite `f64` (every finite double is a dyadic rational).
pub fn from_f64(v: f64) -> Scalar {
    Scalar::from_float(v).unwrap_or_else(Scalar::zero)
}

/// Exact square root when `v` is the square of a rational.
pub fn exact_sqrt(v: &Scalar) -> Option<Scalar> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Parses `p/q`, an integer, or a decimal with optional exponent (`-1.25e-3`).
/// Decimals convert exactly.
pub fn parse(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let err = || Error::ParseNumber(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Scalar::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let mut value = Scalar::from_integer(BigInt::from_str(&digits).map_err(|_| err())?);
    let scale = exponent - frac.len() as i32;
    let ten = Scalar::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

/// Canonical text form: `n` for integers, `n/d` otherwise.
pub fn format(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse("1.5e2").unwrap(), int(150));
        assert_eq!(parse("2e-3").unwrap(), ratio(1, 500));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("0.1").unwrap(), ratio(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1..2", "-", "1e", "0x10"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_form_is_reduced() {
        let v = ratio(6, -4);
        assert_eq!(format(&v), "-3/2");
        assert!(v.denom().is_positive());
        assert_eq!(format(&int(-8)), "-8");
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let x = 0.1f64;
        assert_eq!(to_f64(&from_f64(x)), x);
    }
}
