//! Reduced rational functions over a [`Field`].

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;
use crate::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
///
/// Canonical form makes structural equality coincide with equality of
/// rational functions.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFn<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> RatFn<F> {
    /// Reduces `num / den` to canonical form.
    pub fn reduce(num: UniPoly<F>, den: UniPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = UniPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RatFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (UniPoly<F>, UniPoly<F>) {
        (self.num, self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The numerator when the denominator is one.
    pub fn as_polynomial(&self) -> Option<&UniPoly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
        Ok(RatFn {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::reduce(num, den).expect("den is nonzero")
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> Result<RatFn<G>> {
        RatFn::reduce(self.num.map(&mut f), self.den.map(&mut f))
    }
}

impl<F: Field> Add for &RatFn<F> {
    type Output = RatFn<F>;
    fn add(self, rhs: Self) -> RatFn<F> {
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone()).expect("den nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::reduce(num, &self.den * &rhs.den).expect("den nonzero")
    }
}

impl<F: Field> Sub for &RatFn<F> {
    type Output = RatFn<F>;
    fn sub(self, rhs: Self) -> RatFn<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RatFn<F> {
    type Output = RatFn<F>;
    fn mul(self, rhs: Self) -> RatFn<F> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFn::zero();
        }
        // cross-cancel before multiplying keeps the gcds small
        let g1 = UniPoly::gcd(&self.num, &rhs.den);
        let g2 = UniPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").clone();
        let inv = lc.inv().expect("nonzero");
        RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl<F: Field> Neg for &RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for RatFn<F> {
            type Output = RatFn<F>;
            fn $m(self, rhs: Self) -> RatFn<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        -&self
    }
}

impl<F: Field> Zero for RatFn<F> {
    fn zero() -> Self {
        RatFn {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFn<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Field for RatFn<F> {
    fn inv(&self) -> Result<Self> {
        RatFn::inv(self)
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }
}

impl<F: Field> From<UniPoly<F>> for RatFn<F> {
    fn from(p: UniPoly<F>) -> Self {
        Self::from_poly(p)
    }
}
