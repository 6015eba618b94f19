//! Exact rational numbers.
//!
//! Every weight, distance and perimeter is a [`Rational`]: an arbitrary
//! precision fraction kept in lowest terms with a positive denominator.
//! Ties between perimeters decide which selections are greedy, so the
//! comparisons have to be exact.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num / den`, reduced.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer string such as `"-7"`.
pub fn parse(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if trimmed.is_empty() {
        return Err(bad());
    }
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => BigInt::from_str(trimmed)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Formats as `"p/q"`, or as a bare integer when the denominator is 1.
pub fn format(value: &Rational) -> String {
    value.to_string()
}
