//! Arbitrary-precision rationals: thin helpers over `num_rational::BigRational`.
//!
//! `BigRational` already maintains the reduced form with a positive denominator.
//! This module adds the decimal-string (de)serialization used by the JSON
//! interchange formats and an overflow-safe conversion to f64.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parses a rational from `"num"` / `"num/den"` decimal strings.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer {:?}", num))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer {:?}", den))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as a pair of decimal strings `(numerator, denominator)`.
pub fn rational_strings(r: &BigRational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// Converts to f64 without overflowing on huge numerators/denominators:
/// both sides are shifted down together until they fit.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Keep ~80 significant bits of each side.
    let shift_n = (nb - 80).max(0);
    let shift_d = (db - 80).max(0);
    let shift = shift_n.min(shift_d);
    let (n, d) = if shift > 0 {
        (num >> shift, den >> shift)
    } else {
        (num.clone(), den.clone())
    };
    // After the joint shift at most one side can still be huge; shift it alone
    // and compensate with an exponent.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let extra_n = (nb - 1000).max(0);
    let extra_d = (db - 1000).max(0);
    let n = if extra_n > 0 { &n >> extra_n } else { n };
    let d = if extra_d > 0 { &d >> extra_d } else { d };
    let base = n.to_f64().unwrap_or(f64::MAX) / d.to_f64().unwrap_or(f64::MAX);
    base * 2f64.powi((extra_n - extra_d) as i32)
}

/// Rational from an integer.
pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// True when the rational is an integer equal to `v`.
pub fn rat_is_int(r: &BigRational, v: i64) -> bool {
    r.denom().is_one() && *r.numer() == BigInt::from(v)
}

/// Exact square root of a rational if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let r = parse_rational("-3/6").unwrap();
        assert_eq!(rational_strings(&r), ("-1".into(), "2".into()));
        let r = parse_rational("7").unwrap();
        assert_eq!(rational_strings(&r), ("7".into(), "1".into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn f64_conversion_handles_large_values() {
        let big = BigInt::from(10u8).pow(200);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-12);
        let r = BigRational::new(BigInt::from(1), BigInt::from(10u8).pow(400));
        assert!(rational_to_f64(&r).abs() < 1e-300);
    }

    #[test]
    fn sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&parse_rational("9/4").unwrap()), Some(parse_rational("3/2").unwrap()));
        assert_eq!(rational_sqrt(&parse_rational("2").unwrap()), None);
        assert_eq!(rational_sqrt(&parse_rational("-4").unwrap()), None);
    }
}
