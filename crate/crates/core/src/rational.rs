//! Exact rational numbers used for every distance, time and length.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses a bare integer or a `p/q` fraction. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not an integer or p/q fraction"));
    let parse_int = |part: &str| -> Result<BigInt> {
        let part = part.trim();
        let digits = part.strip_prefix('-').or_else(|| part.strip_prefix('+')).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Smallest integer `k` with `k * step >= value`; `step` must be positive.
pub fn ceil_div(value: &Rational, step: &Rational) -> u64 {
    let q = (value / step).ceil();
    let n = q.to_integer();
    if n < BigInt::zero() {
        0
    } else {
        u64::try_from(n).unwrap_or(u64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-1/3").unwrap(), frac(-1, 3));
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn ceil_div_counts_steps() {
        assert_eq!(ceil_div(&int(3), &int(1)), 3);
        assert_eq!(ceil_div(&int(3), &frac(2, 1)), 2);
        assert_eq!(ceil_div(&frac(7, 2), &frac(1, 2)), 7);
        assert_eq!(ceil_div(&int(0), &int(1)), 0);
    }
}
