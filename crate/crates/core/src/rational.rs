//! Exact rational arithmetic. Every probability in the engine is a
//! [`Rational`]; nothing is ever rounded to floating point.

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` as an exact rational.
///
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `num/den` with an explicit denominator
/// (`1/6`, `0/1`, `1/1`).
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRatioError {
    pub input: String,
    pub reason: String,
}

/// Parses `num/den` (or a bare integer) into an exact rational.
pub fn parse_ratio(text: &str) -> Result<Rational, ParseRatioError> {
    let err = |reason: &str| ParseRatioError {
        input: text.to_owned(),
        reason: reason.to_owned(),
    };
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let denom: BigInt = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| err("denominator is not an integer"))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(err("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}
