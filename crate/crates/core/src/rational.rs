//! Exact rational parsing and formatting.
//!
//! All game quantities are `BigRational`. Input accepts `p/q`, plain
//! integers, and decimal literals such as `0.125`; every form parses to the
//! exact value it denotes. Output is canonical: `p` when the denominator is
//! one, `p/q` otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = BigRational;

/// Parses `p/q`, an integer, or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad numerator in `{s}`")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad denominator in `{s}`")))?;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        };
        if frac_part.is_empty() {
            let int: BigInt = int_part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad decimal literal `{s}`")))?;
            return Ok(BigRational::from_integer(int));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!("bad decimal literal `{s}`")));
        }
        let int: BigInt = int_part
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad decimal literal `{s}`")))?;
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad decimal literal `{s}`")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let negative = s.starts_with('-');
        let whole = BigRational::from_integer(int);
        let frac = BigRational::new(frac, scale);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let int: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational literal `{s}`")))?;
    Ok(BigRational::from_integer(int))
}

/// Canonical display: `p` for integers, `p/q` otherwise (always reduced).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounded decimal rendering with `digits` places, for display only.
///
/// The exact value is truncated toward zero after `digits + 1` places and
/// then rounded half-away-from-zero on the final digit. Trailing zeros are
/// trimmed, but at least one fractional digit is kept for non-integers.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = &abs * BigRational::from_integer(scale.clone());
    // round half up on the scaled integer
    let twice = scaled.numer() * BigInt::from(2u32);
    let rounded: BigInt = (twice + scaled.denom()) / (scaled.denom() * BigInt::from(2u32));
    let whole = &rounded / &scale;
    let frac = &rounded % &scale;
    let mut frac_str = format!("{:0>width$}", frac.to_string(), width = digits);
    while frac_str.len() > 1 && frac_str.ends_with('0') {
        frac_str.pop();
    }
    let sign = if negative { "-" } else { "" };
    if frac_str.chars().all(|c| c == '0') {
        format!("{sign}{whole}.0")
    } else {
        format!("{sign}{whole}.{frac_str}")
    }
}
