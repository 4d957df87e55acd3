//! Exact rational scalars.
//!
//! [`Scalar`] is `num_rational::BigRational`, which keeps every value in
//! canonical form (positive denominator, numerator and denominator coprime),
//! so equality is structural.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{CheckedDiv, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    assert!(denom != 0, "ratio with zero denominator");
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn try_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.checked_div(b).ok_or(Error::DivisionByZero)
}

pub fn half(a: &Scalar) -> Scalar {
    a / int(2)
}

/// Why a token failed to parse as a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub token: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed rational {:?}: {}", self.token, self.reason)
    }
}

impl std::error::Error for ParseScalarError {}

/// Parses `"p/q"` or `"p"` with optional leading `-` on either part.
pub fn parse(token: &str) -> Result<Scalar, ParseScalarError> {
    let fail = |reason| ParseScalarError {
        token: token.to_string(),
        reason,
    };
    let (numer, denom) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let numer = BigInt::from_str(numer).map_err(|_| fail("bad numerator"))?;
    let denom = match denom {
        Some(d) => BigInt::from_str(d).map_err(|_| fail("bad denominator"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Scalar::new(numer, denom))
}

/// Canonical text form: `"p/q"`, or `"p"` when the value is an integer.
pub fn format(value: &Scalar) -> String {
    value.to_string()
}

pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Option<Scalar> {
    values.into_iter().map(Signed::abs).max()
}

/// Lossy conversion for display and the floating-point grid oracle.
pub fn to_f64(value: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
