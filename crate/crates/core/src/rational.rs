//! Scalar helpers on top of [`num_rational::BigRational`].
//!
//! The coefficient field everywhere in this crate is the exact rationals.
//! Arithmetic is delegated to `num-rational`; this module adds the handful of
//! integer sequences the constructions need and a strict textual format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `∏_{j=1}^{n-1} (2^n − 2^j)`, the order-n moment of the MZ difference.
pub fn mz_moment(n: u32) -> BigInt {
    (1..n).fold(BigInt::one(), |acc, j| acc * (pow2(n) - pow2(j)))
}

/// Lowest-terms fraction string: `"p"` when the denominator is 1, else `"p/q"`.
pub fn to_fraction_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses the canonical fraction format produced by [`to_fraction_string`].
///
/// Anything else (a `+` sign, whitespace, a zero or negative denominator, a
/// fraction not in lowest terms, `"3/1"`) is rejected.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    fn parse_int(t: &str, allow_minus: bool) -> Option<BigInt> {
        let digits = match t.strip_prefix('-') {
            Some(rest) if allow_minus => rest,
            Some(_) => return None,
            None => t,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        if t.starts_with('-') && digits == "0" {
            return None;
        }
        BigInt::from_str(t).ok()
    }

    match s.split_once('/') {
        None => parse_int(s, true).map(Rational::from_integer),
        Some((p, q)) => {
            let p = parse_int(p, true)?;
            let q = parse_int(q, false)?;
            if q <= BigInt::one() || !p.gcd(&q).is_one() {
                return None;
            }
            Some(Rational::new_raw(p, q))
        }
    }
}

/// Parses a user-facing number exactly: integers, fractions `p/q`, and
/// decimals with an optional exponent (`0.1`, `-2.5e-3`).
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fractional) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fractional.is_empty() {
        return None;
    }
    if !whole.bytes().chain(fractional.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{fractional}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exponent - fractional.len() as i32;
    let power = Rational::from_integer(num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    if negative {
        value = -value;
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn mz_moment_small_values() {
        assert_eq!(mz_moment(1), BigInt::from(1));
        assert_eq!(mz_moment(2), BigInt::from(2));
        assert_eq!(mz_moment(3), BigInt::from(24));
        assert_eq!(mz_moment(6), BigInt::from(62 * 60 * 56 * 48 * 32));
    }

    #[test]
    fn fraction_format_is_strict() {
        assert_eq!(parse_fraction("-3/2"), Some(frac(-3, 2)));
        assert_eq!(parse_fraction("1"), Some(int(1)));
        assert_eq!(parse_fraction("0"), Some(int(0)));
        for bad in ["2/4", "+1", "3/1", "1/0", "1/-2", "-0", "01", " 1", "1/", "", "a"] {
            assert_eq!(parse_fraction(bad), None, "{bad:?}");
        }
        assert_eq!(to_fraction_string(&frac(6, -4)), "-3/2");
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_decimal("0.1"), Some(frac(1, 10)));
        assert_eq!(parse_decimal("-2.5e-3"), Some(frac(-1, 400)));
        assert_eq!(parse_decimal("3e2"), Some(int(300)));
        assert_eq!(parse_decimal("1/3"), Some(frac(1, 3)));
        assert_eq!(parse_decimal(".5"), Some(frac(1, 2)));
        assert_eq!(parse_decimal("x"), None);
        assert_eq!(parse_decimal("1/0"), None);
    }
}
