//! The associated-series transform.
//!
//! For `H(x) = Σ uₙ xⁿ/n!`, the associated series is
//! `G(t) = H(t e^{−t}) = Σ vₖ tᵏ/k!` with
//!
//! ```text
//! v_0 = u_0,   v_k = Σ_{n=1}^{k} C(k, n) (−n)^{k−n} u_n
//! u_0 = v_0,   u_n = Σ_{h=1}^{n} C(n−1, h−1) n^{n−h} v_h
//! ```
//!
//! Both maps are lower triangular with unit diagonal and prefix-stable: entry
//! `k` only reads entries `0..=k`, so finite prefixes transform exactly.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::Field;
use crate::rational::{binomial, ipow, Rational};

/// Coefficients `c_0 … c_N` in the basis `xⁿ/n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSeq<F>(pub Vec<F>);

impl<F> CoeffSeq<F> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.0
    }
}

impl<F> From<Vec<F>> for CoeffSeq<F> {
    fn from(v: Vec<F>) -> Self {
        CoeffSeq(v)
    }
}

/// `[dᵏ/dtᵏ tⁿ e^{−nt}/n!]_{t=0}`: zero when `k < n`, else `C(k,n)(−n)^{k−n}`.
pub fn c_coeff(k: u64, n: u64) -> Rational {
    if k < n {
        return Rational::zero();
    }
    let e = u32::try_from(k - n).expect("exponent fits in u32");
    Rational::from_integer(binomial(k, n) * ipow(-(n as i64), e))
}

fn backward_weight(n: u64, h: u64) -> BigInt {
    let e = u32::try_from(n - h).expect("exponent fits in u32");
    binomial(n - 1, h - 1) * ipow(n as i64, e)
}

pub fn forward_transform<F: Field>(u: &CoeffSeq<F>) -> CoeffSeq<F> {
    let u = u.as_slice();
    let mut v = Vec::with_capacity(u.len());
    for k in 0..u.len() {
        if k == 0 {
            v.push(u[0].clone());
            continue;
        }
        let vk = (1..=k).fold(F::zero(), |acc, n| {
            if u[n].is_zero() {
                return acc;
            }
            acc + u[n].clone() * F::from_rational(&c_coeff(k as u64, n as u64))
        });
        v.push(vk);
    }
    CoeffSeq(v)
}

pub fn backward_transform<F: Field>(v: &CoeffSeq<F>) -> CoeffSeq<F> {
    let v = v.as_slice();
    let mut u = Vec::with_capacity(v.len());
    for n in 0..v.len() {
        if n == 0 {
            u.push(v[0].clone());
            continue;
        }
        let un = (1..=n).fold(F::zero(), |acc, h| {
            if v[h].is_zero() {
                return acc;
            }
            let w = Rational::from_integer(backward_weight(n as u64, h as u64));
            acc + v[h].clone() * F::from_rational(&w)
        });
        u.push(un);
    }
    CoeffSeq(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::UniPoly;
    use crate::rational::{frac, rat};
    use crate::series::{exp_series, PowerSeries};
    use crate::tower::{y, YElem};
    use num_traits::One;

    fn seq(xs: &[Rational]) -> CoeffSeq<Rational> {
        CoeffSeq(xs.to_vec())
    }

    #[test]
    fn c_coeff_matches_taylor_expansion() {
        // oracle: tⁿ e^{−nt}/n! expanded as a series, k! [t^k]
        for n in 0..6u64 {
            let order = 9;
            let mono = PowerSeries::from_poly(
                &UniPoly::monomial(frac(1, 1) / Rational::from_integer(crate::rational::factorial(n)), n as usize),
                order,
            );
            let g = mono.mul(&exp_series(&rat(-(n as i64)), order));
            for (k, v) in g.to_exponential().into_iter().enumerate() {
                assert_eq!(c_coeff(k as u64, n), v, "k={k} n={n}");
            }
        }
        assert_eq!(c_coeff(3, 5), rat(0));
        assert_eq!(c_coeff(3, 1), rat(3));
        assert_eq!(c_coeff(7, 7), rat(1));
    }

    #[test]
    fn tree_function_series() {
        // uₙ = n^{n−1}: G = t
        let u = seq(&[rat(0), rat(1), rat(2), rat(9)]);
        assert_eq!(forward_transform(&u), seq(&[rat(0), rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn prototype_at_three() {
        let u = seq(&[frac(1, 3), rat(1), rat(5), rat(36)]);
        assert_eq!(forward_transform(&u), seq(&[frac(1, 3), rat(1), rat(3), rat(9)]));
    }

    #[test]
    fn single_entry() {
        assert_eq!(forward_transform(&seq(&[rat(5)])), seq(&[rat(5)]));
        assert_eq!(backward_transform(&seq(&[rat(7)])), seq(&[rat(7)]));
        assert!(forward_transform(&CoeffSeq::<Rational>(vec![])).is_empty());
    }

    #[test]
    fn seed_t_squared_over_two() {
        let u = backward_transform(&seq(&[rat(0), rat(0), rat(1), rat(0)]));
        assert_eq!(u, seq(&[rat(0), rat(0), rat(1), rat(6)]));
        let long = backward_transform(&seq(&[rat(0), rat(0), rat(1), rat(0), rat(0), rat(0)]));
        assert_eq!(long.0[1], rat(0));
        for n in 2..6u32 {
            let expect = rat(n as i64 - 1) * Rational::from_integer(ipow(n as i64, n - 2));
            assert_eq!(long.0[n as usize], expect);
        }
    }

    #[test]
    fn prototype_backward_symbolic() {
        // v = [1/y, 1, y, y², …] gives uₙ = (y+n)^{n−1}
        let yv = y();
        let mut v = vec![yv.inv().unwrap()];
        let mut p = YElem::one();
        for _ in 1..6 {
            v.push(p.clone());
            p = &p * &yv;
        }
        let u = backward_transform(&CoeffSeq(v.clone()));
        for (n, un) in u.0.iter().enumerate().skip(1) {
            let base = &yv + &YElem::from_i64(n as i64);
            assert_eq!(un, &base.pow(n as i64 - 1).unwrap());
        }
        assert_eq!(forward_transform(&u).0, v);
        // at y = 2
        let at2: Vec<Rational> = u.0.iter().take(4).map(|c| c.eval(&rat(2)).unwrap()).collect();
        assert_eq!(at2, vec![frac(1, 2), rat(1), rat(4), rat(25)]);
    }

    #[test]
    fn matrix_is_unit_lower_triangular() {
        for k in 0..20u64 {
            for n in 0..20u64 {
                let c = c_coeff(k, n);
                if n > k {
                    assert!(c.is_zero());
                }
                if n == k {
                    assert_eq!(c, rat(1));
                }
            }
        }
    }

    #[test]
    fn verification_coefficients_vanish() {
        // d_h = Σ_{n=h}^{k} C(k,n) C(n−1,h−1) (−n)^{k−n} n^{n−h}
        for k in 2..=20u64 {
            for h in 1..k {
                let d = (h..=k).fold(BigInt::zero(), |acc, n| {
                    acc + binomial(k, n)
                        * binomial(n - 1, h - 1)
                        * ipow(-(n as i64), (k - n) as u32)
                        * ipow(n as i64, (n - h) as u32)
                });
                assert!(d.is_zero(), "d_{h} for k = {k}");
            }
        }
    }

    #[test]
    fn transform_agrees_with_series_substitution() {
        // H(x) = 1/(1−x) has uₙ = n!; G(t) = 1/(1 − t e^{−t})
        let order = 8;
        let u: Vec<Rational> = (0..=order as u64)
            .map(|n| Rational::from_integer(crate::rational::factorial(n)))
            .collect();
        let v = forward_transform(&CoeffSeq(u));
        // oracle: G = Σ_m (t e^{−t})^m by truncated series powers
        let x = PowerSeries::from_poly(&UniPoly::var(), order).mul(&exp_series(&rat(-1), order));
        let mut g = PowerSeries::new(vec![rat(1)], order);
        let mut pow = PowerSeries::new(vec![rat(1)], order);
        for _ in 1..=order {
            pow = pow.mul(&x);
            g = g.add(&pow);
        }
        assert_eq!(v.0, g.to_exponential());
    }
}
