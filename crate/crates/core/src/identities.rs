//! The alternating binomial sums
//!
//! ```text
//! P(x, s) = Σ_{n=0}^{s+1} (−1)^n C(s+1, n) (x + n)^s
//! b(q, s) = Σ_{n=0}^{s+1} (−1)^n C(s+1, n) n^q
//! a(q, s) = C(s, q) b(q, s)            (coefficient of x^{s−q} in P(x, s))
//! ```
//!
//! and a verifier for `P(x, s) = 0` together with the recurrence
//! `b(q, s) = −(s+1) b(q−1, s−1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{binomial, ipow, Rational};

fn sign(n: u64) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `P(x, s)`, each `(x + n)^s` obtained by Taylor-shifting `x^s`.
pub fn p_poly(s: u64) -> UniPoly<Rational> {
    let x_pow = UniPoly::monomial(Rational::one(), s as usize);
    (0..=s + 1).fold(UniPoly::zero(), |acc, n| {
        // (x + n)^s = Q(x) with Q(w) = x^s evaluated at w − (−n)
        let shifted = x_pow.taylor_shift(&-Rational::from_integer(n.into()));
        let c = Rational::from_integer(sign(n) * binomial(s + 1, n));
        &acc + &shifted.scale(&c)
    })
}

pub fn b_coeff(q: u64, s: u64) -> Rational {
    let q = u32::try_from(q).expect("exponent fits in u32");
    let sum = (0..=s + 1).fold(BigInt::zero(), |acc, n| {
        acc + sign(n) * binomial(s + 1, n) * ipow(n as i64, q)
    });
    Rational::from_integer(sum)
}

pub fn a_coeff(q: u64, s: u64) -> Result<Rational> {
    if q > s {
        return Err(Error::IndexOutOfRange(format!("a({q}, {s}) needs q <= s")));
    }
    Ok(Rational::from_integer(binomial(s, q)) * b_coeff(q, s))
}

/// First violation found by [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonzeroPolynomial { s: u64, poly: Vec<Rational> },
    Recurrence { q: u64, s: u64, lhs: Rational, rhs: Rational },
    Coefficient { q: u64, s: u64, a: Rational, extracted: Rational },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonzeroPolynomial { s, poly } => {
                let cs: Vec<String> = poly.iter().map(ToString::to_string).collect();
                write!(f, "P(x, {s}) = [{}] is not zero", cs.join(", "))
            }
            Violation::Recurrence { q, s, lhs, rhs } => {
                write!(f, "b({q}, {s}) = {lhs} but -(s+1) b(q-1, s-1) = {rhs}")
            }
            Violation::Coefficient { q, s, a, extracted } => {
                write!(f, "a({q}, {s}) = {a} but [x^{}] P(x, {s}) = {extracted}", s - q)
            }
        }
    }
}

/// Checks `P(x, s) = 0` for `s ≤ max_s`, the `b` recurrence for
/// `1 ≤ q ≤ s ≤ max_s`, and `a(q, s) = [x^{s−q}] P(x, s)`.
pub fn verify(max_s: u64) -> std::result::Result<(), Box<Violation>> {
    for s in 0..=max_s {
        let p = p_poly(s);
        if !p.is_zero() {
            return Err(Box::new(Violation::NonzeroPolynomial {
                s,
                poly: p.into_coeffs(),
            }));
        }
        for q in 0..=s {
            let a = a_coeff(q, s).expect("q <= s");
            let extracted = p.coeff((s - q) as usize);
            if a != extracted {
                return Err(Box::new(Violation::Coefficient { q, s, a, extracted }));
            }
            if q >= 1 {
                let lhs = b_coeff(q, s);
                let rhs = -Rational::from_integer(BigInt::from(s + 1)) * b_coeff(q - 1, s - 1);
                if lhs != rhs {
                    return Err(Box::new(Violation::Recurrence { q, s, lhs, rhs }));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Expands every `(x+n)^s` with the binomial theorem, no Taylor shift.
    fn p_poly_brute(s: u64) -> UniPoly<Rational> {
        let mut coeffs = vec![BigInt::zero(); s as usize + 1];
        for n in 0..=s + 1 {
            for (j, c) in coeffs.iter_mut().enumerate() {
                let j = j as u64;
                *c += sign(n) * binomial(s + 1, n) * binomial(s, j) * ipow(n as i64, (s - j) as u32);
            }
        }
        UniPoly::new(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    #[test]
    fn small_cases_vanish() {
        assert!(p_poly(0).is_zero());
        assert!(p_poly(1).is_zero());
        assert!(p_poly(2).is_zero());
        assert!(p_poly(3).is_zero());
        assert!(p_poly_brute(3).is_zero());
    }

    #[test]
    fn single_term_is_not_zero() {
        // guards against a vacuous p_poly: (x+1)^3 alone has constant term 1
        let x3 = UniPoly::monomial(rat(1), 3);
        assert_eq!(x3.taylor_shift(&rat(-1)).coeff(0), rat(1));
    }

    #[test]
    fn b_examples() {
        for s in 0..6 {
            assert_eq!(b_coeff(0, s), rat(0));
        }
        assert_eq!(b_coeff(1, 1), rat(0));
        // 0·1 − 2·1 + 1·4
        assert_eq!(b_coeff(2, 1), rat(2));
    }

    #[test]
    fn a_examples() {
        assert_eq!(a_coeff(0, 5).unwrap(), rat(0));
        assert_eq!(a_coeff(3, 3).unwrap(), p_poly_brute(3).coeff(0));
        assert_eq!(a_coeff(1, 2).unwrap(), p_poly_brute(2).coeff(1));
        assert!(matches!(a_coeff(4, 3), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn verify_small_range() {
        verify(12).unwrap();
    }
}
