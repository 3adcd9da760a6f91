//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients in ascending degree order with no trailing zero.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly { coeffs }
    }

    /// `c + t`, handy for linear factors.
    pub fn linear(c: F) -> Self {
        Self::new(vec![c, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Returns `(c, m)` when the polynomial is `c·x^m` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(&F, usize)> {
        let (lead, rest) = self.coeffs.split_last()?;
        rest.iter()
            .all(|c| c.is_zero())
            .then_some((lead, rest.len()))
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift_up(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let lead = d.leading().ok_or(Error::ZeroDenominator)?;
        let lead_inv = lead.inv()?;
        let dn = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; fails unless `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Domain("polynomial division is not exact".into()))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Each remainder is made monic, so coefficients stay canonical field
    /// elements throughout the remainder sequence.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        // a power of a linear factor only needs the root multiplicity
        for (p, q) in [(a, b), (b, a)] {
            if q.is_zero() {
                return p.make_monic();
            }
            if let Some(root) = q.linear_power_root() {
                let m = q.degree().finite().expect("nonzero");
                let v = p.taylor_shift(&-root.clone()).valuation().unwrap_or(m);
                return Self::linear(-root).pow(v.min(m) as u32);
            }
        }
        let (mut a, mut b) = (a.make_monic(), b.make_monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.make_monic();
        }
        a
    }

    /// `a` when `self = c (x − a)^m` with `m ≥ 1`.
    pub fn linear_power_root(&self) -> Option<F> {
        let m = self.degree().finite()?;
        if m == 0 {
            return None;
        }
        let lc = self.leading()?.clone();
        let root = -(self.coeff(m - 1) * (lc * F::from_i64(m as i64)).inv().ok()?);
        let shifted = self.taylor_shift(&-root.clone());
        (shifted.valuation() == Some(m)).then_some(root)
    }

    /// Returns `Q` with `Q(w) = P(w - c)`, i.e. the coefficients of `P` in the
    /// basis `(z + c)^j`.
    pub fn taylor_shift(&self, c: &F) -> Self {
        // Horner in the shifted basis: Q ← Q·(w − c) + a_i
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        let neg_c = -c.clone();
        for a in self.coeffs.iter().rev() {
            out.insert(0, F::zero());
            for j in 0..out.len() - 1 {
                let carry = out[j + 1].clone() * neg_c.clone();
                out[j] = out[j].clone() + carry;
            }
            out[0] = out[0].clone() + a.clone();
        }
        Self::new(out)
    }

    /// `P(q(x))` by Horner.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field>(&self, f: impl FnMut(&F) -> Result<G>) -> Result<UniPoly<G>> {
        Ok(UniPoly::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: Self) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: Self) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: Self) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        -&self
    }
}

impl<F: Field> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for UniPoly<F> {
    fn one() -> Self {
        UniPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat, Rational};

    fn p(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Degree::Finite(1));
        assert_eq!(p(&[0, 0]).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(UniPoly::gcd(&a, &p(&[2, 2])), p(&[1, 1]));
        assert_eq!(UniPoly::gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
        assert!(a.div_rem(&UniPoly::zero()).is_err());
    }

    #[test]
    fn gcd_with_linear_powers() {
        let x1 = p(&[-1, 1]);
        let a = &x1.pow(3) * &p(&[2, 1]);
        assert_eq!(p(&[3, -6, 3]).linear_power_root(), Some(rat(1)));
        assert_eq!(p(&[1, 0, 1]).linear_power_root(), None);
        assert_eq!(UniPoly::gcd(&a, &x1.pow(2).scale(&rat(-5))), x1.pow(2));
        assert_eq!(UniPoly::gcd(&x1.pow(5), &a), x1.pow(3));
        assert_eq!(UniPoly::gcd(&p(&[1, 0, 1]), &x1.pow(2)), p(&[1]));
        assert_eq!(UniPoly::gcd(&UniPoly::zero(), &x1.pow(2).scale(&rat(3))), x1.pow(2));
        assert!(UniPoly::<Rational>::gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn taylor_shift_examples() {
        // z^2 = 1 - 2(z+1) + (z+1)^2
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&rat(1)), p(&[1, -2, 1]));
        assert_eq!(p(&[0, 1]).taylor_shift(&rat(0)), p(&[0, 1]));
        assert_eq!(p(&[1]).taylor_shift(&frac(5, 3)), p(&[1]));
    }

    #[test]
    fn taylor_shift_coefficients_are_scaled_derivatives() {
        let poly = p(&[3, -1, 4, 1, -5]);
        let c = frac(2, 7);
        let shifted = poly.taylor_shift(&c);
        let mut deriv = poly.clone();
        let mut fact = rat(1);
        for j in 0..5 {
            if j > 0 {
                fact *= rat(j as i64);
            }
            assert_eq!(shifted.coeff(j), deriv.eval(&-c.clone()) / fact.clone());
            deriv = deriv.derivative();
        }
    }

    #[test]
    fn monomial_detection() {
        assert_eq!(p(&[0, 0, 3]).as_monomial(), Some((&rat(3), 2)));
        assert_eq!(p(&[1, 1]).as_monomial(), None);
        assert_eq!(p(&[]).as_monomial(), None);
    }
}
