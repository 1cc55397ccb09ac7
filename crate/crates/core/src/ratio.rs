//! Exact rational arithmetic helpers.
//!
//! All rank-like quantities in this crate are exact rationals kept in lowest
//! terms. Floating point appears only where a caller explicitly asks for it.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Ratio = num_rational::BigRational;

/// `num/den` as a [`Ratio`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Integer `v` as a [`Ratio`].
pub fn rat_int(v: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(v))
}

/// Formats as `p/q`, denominator always written (`3` becomes `3/1`).
pub fn format_ratio(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatioParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_ratio(s: &str) -> Result<Ratio, RatioParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RatioParseError::Empty);
    }
    let bad = || RatioParseError::Invalid(t.to_string());
    match t.split_once('/') {
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Ratio::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(RatioParseError::ZeroDenominator(t.to_string()));
            }
            Ok(Ratio::new(n, d))
        }
    }
}

/// Nearest `f64`; saturates on overflow.
pub fn ratio_to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
