//! Helpers for exact rationals: construction, `p/q` text form and parsing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Reduced fraction of arbitrary-precision integers.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {0:?}: expected p/q with integers p, q and q > 0")]
pub struct ParseRatioError(pub String);

/// `p/q` as a reduced [`BigRational`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q`, including integers (`1/1`).
pub fn format_ratio(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer. Floats are rejected.
pub fn parse_ratio(text: &str) -> Result<BigRational, ParseRatioError> {
    let bad = || ParseRatioError(text.to_string());
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Smallest integer `>= x`.
pub fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn sum<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    xs.into_iter().fold(BigRational::zero(), |acc, x| acc + x)
}

pub fn product<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    xs.into_iter().fold(BigRational::one(), |acc, x| acc * x)
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: &BigRational, exp: i64) -> BigRational {
    let mut out = BigRational::one();
    let step = if exp >= 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.unsigned_abs() {
        out *= &step;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_ratio(&ratio(4, 6)), "2/3");
        assert_eq!(format_ratio(&ratio(3, 3)), "1/1");
        assert_eq!(parse_ratio("2/5").unwrap(), ratio(2, 5));
        assert_eq!(parse_ratio(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_ratio("3").unwrap(), ratio(3, 1));
        assert!(parse_ratio("0.5").is_err());
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("a/b").is_err());
    }

    #[test]
    fn ceiling_and_powers() {
        assert_eq!(ceil(&ratio(5, 2)), BigInt::from(3));
        assert_eq!(ceil(&ratio(4, 2)), BigInt::from(2));
        assert_eq!(pow(&ratio(2, 1), -2), ratio(1, 4));
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&ratio(7, 1), 0), ratio(1, 1));
    }
}
