use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// A commutative field with an embedding of Q.
///
/// Implemented by `Rational` and by `RatFn<F>` for any field `F`, which gives
/// the tower Q, Q(y), Q(y)(t). Values are canonical, so `==` is field equality.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Result<Self>;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}
