//! Exact rational thresholds.
//!
//! Every comparison of the form `count >= r * n` in this crate goes through
//! these helpers so that boundary cases are decided in integer arithmetic.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Parses `"0.25"`, `"1/4"`, `"3"` or `"-0.5"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse { line: 0, message: format!("not a rational number: {text:?}") };
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac_part.len() > 15 {
        return Err(bad());
    }
    let int_value: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let scale = 10i64.pow(frac_part.len() as u32);
    let frac_value: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
    let value = Rational::new(int_value * scale + frac_value, scale);
    Ok(if negative { -value } else { value })
}

/// `count >= r * n`, decided exactly.
pub fn at_least(count: usize, r: Rational, n: usize) -> bool {
    // count * den >= num * n with den > 0 after normalisation.
    (count as i128) * (*r.denom() as i128) >= (*r.numer() as i128) * (n as i128)
}

/// `count >= base + r * n`, decided exactly.
pub fn at_least_plus(count: usize, base: usize, r: Rational, n: usize) -> bool {
    (count as i128 - base as i128) * (*r.denom() as i128) >= (*r.numer() as i128) * (n as i128)
}

/// `count <= r * n`, decided exactly.
pub fn at_most(count: usize, r: Rational, n: usize) -> bool {
    (count as i128) * (*r.denom() as i128) <= (*r.numer() as i128) * (n as i128)
}

/// Smallest integer `k` with `k >= r * n`.
pub fn ceil_mul(r: Rational, n: usize) -> i64 {
    (r * Rational::from_integer(n as i64)).ceil().to_integer()
}

/// Largest integer `k` with `k <= r * n`.
pub fn floor_mul(r: Rational, n: usize) -> i64 {
    (r * Rational::from_integer(n as i64)).floor().to_integer()
}

/// `ceil(a / b)` for non-negative `a` and positive `b`.
pub fn div_ceil(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

pub fn in_open_unit(r: Rational) -> bool {
    r.is_positive() && r < Rational::from_integer(1)
}

pub fn in_closed_unit(r: Rational) -> bool {
    !r.is_negative() && r <= Rational::from_integer(1)
}

pub fn is_zero(r: Rational) -> bool {
    r.is_zero()
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1, 4));
        assert_eq!(parse_rational("1/4").unwrap(), Rational::new(1, 4));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), Rational::new(-1, 8));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn thresholds_are_exact_at_the_boundary() {
        // 0.2 * 5 = 1 exactly; a float product can land on 1.0000000000000002.
        let r = parse_rational("0.2").unwrap();
        assert!(at_least(1, r, 5));
        assert!(!at_least(0, r, 5));
        assert_eq!(ceil_mul(parse_rational("0.6").unwrap(), 4), 3);
        assert_eq!(floor_mul(parse_rational("0.75").unwrap(), 8), 6);
        assert_eq!(ceil_mul(parse_rational("0.25").unwrap(), 8), 2);
    }
}
