//! Canonical text form for exact rationals.
//!
//! Values are `num::BigRational`, which is always kept reduced with a
//! positive denominator. The text form is `"p/q"`, or `"p"` when `q = 1`.
//! A leading ASCII `-` or the Unicode minus sign `−` is accepted on input;
//! output always uses ASCII.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

pub use num::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p"`, `"p/q"`, `"-p/q"` or `"−p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = if let Some(rest) = trimmed.strip_prefix('−') {
        (true, rest)
    } else if let Some(rest) = trimmed.strip_prefix('-') {
        (true, rest)
    } else {
        (false, trimmed)
    };
    let (num_text, den_text) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let parse_natural = |s: &str| -> Result<BigInt, ParseRationalError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::BadInteger(s.to_string()));
        }
        s.parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(s.to_string()))
    };
    let numer = parse_natural(num_text)?;
    let denom = parse_natural(den_text)?;
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(trimmed.to_string()));
    }
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lossy conversion used only by the floating-point search.
pub fn to_f64(value: &Rational) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(if value.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// taken from the continued-fraction convergents and semiconvergents.
pub fn approximate(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || max_den == 0 {
        return None;
    }
    let negative = x < 0.0;
    let target = x.abs();
    // convergents h/k
    let (mut h_prev, mut h) = (1u128, target.floor() as u128);
    let (mut k_prev, mut k) = (0u128, 1u128);
    let mut rem = target - target.floor();
    let cap = max_den as u128;
    let mut best = (h, k);
    for _ in 0..64 {
        if rem < 1e-15 {
            break;
        }
        let inv = 1.0 / rem;
        let a = inv.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u128;
        rem = inv - inv.floor();
        let k_next = a * k + k_prev;
        if k_next > cap {
            // largest admissible semiconvergent
            let t = (cap - k_prev) / k;
            if t > 0 {
                let (hs, ks) = (t * h + h_prev, t * k + k_prev);
                let err_semi = (hs as f64 / ks as f64 - target).abs();
                let err_conv = (h as f64 / k as f64 - target).abs();
                if err_semi < err_conv {
                    best = (hs, ks);
                }
            }
            break;
        }
        let h_next = a * h + h_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        best = (h, k);
    }
    let value = Rational::new(BigInt::from(best.0), BigInt::from(best.1));
    Some(if negative { -value } else { value })
}
