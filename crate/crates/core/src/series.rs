//! Truncated power series and exact expansion of rational functions at 0.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;
use crate::ratfn::RatFn;
use crate::rational::{factorial, Rational};

/// `c_0 + c_1 t + … + c_N t^N + O(t^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> PowerSeries<F> {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        PowerSeries { coeffs }
    }

    pub fn from_poly(p: &UniPoly<F>, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &F {
        &self.coeffs[n]
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![F::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    /// `n! · c_n` for each `n`: the coefficients in the basis `t^n / n!`.
    pub fn to_exponential(&self) -> Vec<F> {
        let mut fact = F::from_i64(1);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact = fact.clone() * F::from_i64(n as i64);
                }
                c.clone() * fact.clone()
            })
            .collect()
    }
}

/// Taylor expansion of `f` at 0 to order `order`, by exact long division.
pub fn series_expand<F: Field>(f: &RatFn<F>, order: usize) -> Result<PowerSeries<F>> {
    let den = f.den().coeffs();
    let d0 = den.first().filter(|c| !c.is_zero()).ok_or(Error::PoleAtOrigin)?;
    let d0_inv = d0.inv()?;
    let num = f.num();
    let mut out: Vec<F> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        // den · out = num  ⇒  out_n = (num_n − Σ_{i≥1} den_i out_{n−i}) / den_0
        let mut acc = num.coeff(n);
        for (i, d) in den.iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                acc = acc - d.clone() * out[n - i].clone();
            }
        }
        out.push(acc * d0_inv.clone());
    }
    Ok(PowerSeries { coeffs: out })
}

/// `e^{a t} = Σ aⁿ tⁿ / n!` to order `order`, exact.
pub fn exp_series(a: &Rational, order: usize) -> PowerSeries<Rational> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = Rational::from_integer(1.into());
    for n in 0..=order {
        coeffs.push(pow.clone() / Rational::from_integer(factorial(n as u64)));
        pow *= a;
    }
    PowerSeries { coeffs }
}

impl<F: Field> PowerSeries<F> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}
