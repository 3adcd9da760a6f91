//! Rational scalars and the integer combinatorics shared by every module.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, denominator
//! positive, zero stored as `0/1`. Rationals are written as `p/q` (or `p`
//! when the denominator is one).

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q`, `p` or `-p/q`. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Parses a comma separated list of rationals; the empty string is the empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// `base^exp` with the convention `0^0 = 1`. A negative exponent on zero is
/// a division by zero.
pub fn pow_int(base: &Rational, exp: i64) -> Result<Rational> {
    if exp == 0 {
        return Ok(Rational::one());
    }
    if base.is_zero() {
        return if exp > 0 {
            Ok(Rational::zero())
        } else {
            Err(Error::DivisionByZero)
        };
    }
    let e = u32::try_from(exp.unsigned_abs())
        .map_err(|_| Error::Domain(format!("exponent {exp} too large")))?;
    let p = Rational::new(base.numer().pow(e), base.denom().pow(e));
    Ok(if exp < 0 { p.recip() } else { p })
}

/// `n^exp` for an integer base and natural exponent, `0^0 = 1`.
pub fn ipow(n: i64, exp: u32) -> BigInt {
    BigInt::from(n).pow(exp)
}

static PASCAL: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

/// Binomial coefficient from a memoized Pascal triangle; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    {
        let rows = PASCAL.read().unwrap_or_else(|e| e.into_inner());
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = PASCAL.write().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let next = match rows.last() {
            None => vec![BigInt::one()],
            Some(prev) => {
                let mut row = Vec::with_capacity(prev.len() + 1);
                row.push(BigInt::one());
                for w in prev.windows(2) {
                    row.push(&w[0] + &w[1]);
                }
                row.push(BigInt::one());
                row
            }
        };
        rows.push(next);
    }
    rows[n][k].clone()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// True when `r` is an integer; returns it.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), rat(-7));
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert_eq!(parse_rational_list("").unwrap(), vec![]);
        assert_eq!(
            parse_rational_list("0,1/2,-3").unwrap(),
            vec![rat(0), frac(1, 2), rat(-3)]
        );
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(frac(10, -4).to_string(), "-5/2");
        assert_eq!(frac(4, 2).to_string(), "2");
        assert_eq!(rat(0).to_string(), "0");
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow_int(&rat(0), 0).unwrap(), rat(1));
        assert_eq!(pow_int(&rat(0), 3).unwrap(), rat(0));
        assert!(pow_int(&rat(0), -1).is_err());
        assert_eq!(pow_int(&frac(2, 3), -2).unwrap(), frac(9, 4));
    }

    #[test]
    fn pascal_matches_factorials() {
        for n in 0..30u64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k) * factorial(k) * factorial(n - k),
                    factorial(n)
                );
            }
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
