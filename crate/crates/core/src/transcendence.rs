//! Exceptional sets, witness polynomials and the pipeline
//! `(a, r, P) ↦ g(t)` for
//!
//! ```text
//! S(x) = Σ_{n≥1} (n+r)^{n−a} P(n) xⁿ/n!
//! ```
//!
//! Writing `P(z) = Σ_{j=q}^{m} p_j (z+r)^j` and `A_k = p_{a−k}` for
//! `b = a−m ≤ k ≤ c = a−q` gives `Σ_k A_k (n+r)^{n−k} = (n+r)^{n−a} P(n)`.
//! Under `x = t e^{−t}` the combination `L = Σ_k A_k F_k` of the Kolberg ladder
//! at `y = r` equals `t^r g(t)`; for `r = 0` the opus-2 ladder gives `L = g(t)`.
//!
//! The Kolberg sums start at `n = 0`, so for `r ≠ 0` one has
//! `L = x^r (S + r^{−a} P(0))`. The constant is kept as `offset`.
//!
//! Coefficients are rationals throughout.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::association::{forward_transform, CoeffSeq};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::quatuor::{linear_combination, Ladder};
use crate::rational::{as_integer, pow_int, rat, Rational};
use crate::series::{exp_series, series_expand};
use crate::tower::QtElem;

/// The integers `n` for which `sⁿ g(s)` is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalSet {
    Empty,
    Singleton(i64),
    AllIntegers,
}

impl ExceptionalSet {
    pub fn contains(&self, r: &Rational) -> bool {
        match self {
            ExceptionalSet::Empty => false,
            ExceptionalSet::AllIntegers => r.is_integer(),
            ExceptionalSet::Singleton(n) => as_integer(r).is_some_and(|i| i == BigInt::from(*n)),
        }
    }
}

/// Classifies `E` from the shape of `g = u/v`: `Z` for `g = 0`, `{m' − m}` when
/// `g = c s^m / s^{m'}`, empty otherwise.
pub fn exceptional_set(g: &QtElem) -> ExceptionalSet {
    if g.is_zero() {
        return ExceptionalSet::AllIntegers;
    }
    match (g.num().as_monomial(), g.den().as_monomial()) {
        (Some((_, m_num)), Some((_, m_den))) => {
            ExceptionalSet::Singleton(m_den as i64 - m_num as i64)
        }
        _ => ExceptionalSet::Empty,
    }
}

/// The polynomial with root `t` when `t^r g(t) = d`:
///
/// ```text
/// r > 0:  s^p u^q − d^q v^q
/// r = 0:  u − d v
/// r < 0:  u^q − d^q s^{−p} v^q
/// ```
///
/// with `g = u/v` and `r = p/q` in lowest terms.
pub fn witness_polynomial(g: &QtElem, r: &Rational, d: &Rational) -> Result<UniPoly<Rational>> {
    if exceptional_set(g).contains(r) {
        return Err(Error::DegenerateWitness);
    }
    let (u, v) = (g.num(), g.den());
    let p = r.numer();
    let q = u32::try_from(r.denom().clone())
        .map_err(|_| Error::Domain(format!("denominator of r = {r} too large")))?;
    let p_abs = usize::try_from(p.abs())
        .map_err(|_| Error::Domain(format!("numerator of r = {r} too large")))?;
    let d_q = pow_int(d, q as i64)?;
    let w = if r.is_zero() {
        u - &v.scale(d)
    } else if r.is_positive() {
        &u.pow(q).shift_up(p_abs) - &v.pow(q).scale(&d_q)
    } else {
        &u.pow(q) - &v.pow(q).shift_up(p_abs).scale(&d_q)
    };
    if w.is_zero() {
        return Err(Error::DegenerateWitness);
    }
    Ok(w)
}

/// `P(z) = Σ_{j=low}^{high} p_j (z + r)^j` with `p_low ≠ 0 ≠ p_high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rebased {
    pub low: usize,
    pub high: usize,
    pub coeffs: BTreeMap<usize, Rational>,
}

pub fn rebase_poly(p: &UniPoly<Rational>, r: &Rational) -> Result<Rebased> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shifted = p.taylor_shift(r);
    let low = shifted.valuation().expect("nonzero");
    let high = shifted.degree().finite().expect("nonzero");
    let coeffs = (low..=high).map(|j| (j, shifted.coeff(j))).collect();
    Ok(Rebased { low, high, coeffs })
}

/// For `a ≤ 0`: `(n+r)^{n−a} P(n) = (n+r)^{n−1} Q(n)` with `Q = (z+r)^{1−a} P`.
pub fn negative_a_reduction(
    a: i64,
    r: &Rational,
    p: &UniPoly<Rational>,
) -> Result<(i64, UniPoly<Rational>)> {
    if a > 0 {
        return Err(Error::Domain(format!("reduction needs a <= 0, got {a}")));
    }
    let e = u32::try_from(1 - a).map_err(|_| Error::Domain(format!("a = {a} too negative")))?;
    let factor = UniPoly::linear(r.clone()).pow(e);
    Ok((1, &factor * p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineCase {
    RNonzero,
    RZero,
}

impl PipelineCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PipelineCase::RNonzero => "r_nonzero",
            PipelineCase::RZero => "r_zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub case: PipelineCase,
    /// `a` after the reduction for `a ≤ 0`.
    pub a: i64,
    pub r: Rational,
    /// `P` after the reduction for `a ≤ 0`.
    pub poly: UniPoly<Rational>,
    pub g: QtElem,
    pub b: i64,
    pub c: i64,
    /// `A_k` for `b ≤ k ≤ c`.
    pub coeffs: BTreeMap<i64, Rational>,
    /// `r^{−a} P(0)` when `r ≠ 0`, else 0.
    pub offset: Rational,
    pub exceptional: ExceptionalSet,
    pub criterion_ok: bool,
}

impl PipelineResult {
    /// `u_n = Σ_k A_k (n+r)^{n−k}` for `n ≤ order`, the coefficients of
    /// `Σ_k A_k H_k` (the `n = 0` entry is zero in the `r = 0` case).
    pub fn u_coefficients(&self, order: usize) -> Result<Vec<Rational>> {
        (0..=order as i64)
            .map(|n| {
                if n == 0 && self.case == PipelineCase::RZero {
                    return Ok(Rational::zero());
                }
                let base = &self.r + rat(n);
                self.coeffs.iter().try_fold(Rational::zero(), |acc, (k, a)| {
                    Ok(acc + a * pow_int(&base, n - k)?)
                })
            })
            .collect()
    }

    /// `n! [tⁿ] (g(t) e^{r t})` for `n ≤ order`.
    pub fn g_coefficients(&self, order: usize) -> Result<Vec<Rational>> {
        let mut s = series_expand(&self.g, order)?;
        if self.case == PipelineCase::RNonzero {
            s = s.mul(&exp_series(&self.r, order));
        }
        Ok(s.to_exponential())
    }

    /// Checks that `g` reproduces the series coefficient by coefficient.
    pub fn series_consistent(&self, order: usize) -> Result<bool> {
        let v = forward_transform(&CoeffSeq(self.u_coefficients(order)?)).0;
        Ok(v == self.g_coefficients(order)?)
    }
}

/// Runs the pipeline against a pair of shared ladders.
#[derive(Clone, Debug)]
pub struct Pipeline {
    kolberg: Ladder,
    opus2: Ladder,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            kolberg: Ladder::kolberg(),
            opus2: Ladder::opus2(),
        }
    }
}

impl Pipeline {
    pub fn new(kolberg: Ladder, opus2: Ladder) -> Self {
        Pipeline { kolberg, opus2 }
    }

    pub fn run(&self, a: i64, r: &Rational, p: &UniPoly<Rational>) -> Result<PipelineResult> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if a >= 2 {
            if let Some(i) = as_integer(r) {
                if i <= BigInt::from(-1) && i >= BigInt::from(1 - a) {
                    return Err(Error::ExcludedShift {
                        a,
                        r: r.clone(),
                        max: a - 1,
                    });
                }
            }
        }
        let (a, poly) = if a <= 0 {
            negative_a_reduction(a, r, p)?
        } else {
            (a, p.clone())
        };
        let rebased = rebase_poly(&poly, r)?;
        let b = a - rebased.high as i64;
        let c = a - rebased.low as i64;
        let coeffs: BTreeMap<i64, Rational> = (b..=c)
            .map(|k| (k, rebased.coeffs[&((a - k) as usize)].clone()))
            .collect();
        let terms: Vec<(Rational, i64)> = coeffs.iter().map(|(k, a)| (a.clone(), *k)).collect();
        let (case, g, offset) = if r.is_zero() {
            (
                PipelineCase::RZero,
                linear_combination(&terms, &self.opus2, None)?,
                Rational::zero(),
            )
        } else {
            let g = linear_combination(&terms, &self.kolberg, Some(r))?;
            let offset = pow_int(r, -a)? * poly.coeff(0);
            (PipelineCase::RNonzero, g, offset)
        };
        let exceptional = exceptional_set(&g);
        let criterion_ok = !exceptional.contains(r);
        Ok(PipelineResult {
            case,
            a,
            r: r.clone(),
            poly,
            g,
            b,
            c,
            coeffs,
            offset,
            exceptional,
            criterion_ok,
        })
    }

    /// `Σ_{n≥1} n^{n−k} e^{−n}/n!`, the opus-2 closed form at `t = 1`.
    pub fn rational_value_at_one(&self, k: i64) -> Result<Rational> {
        if k < 1 {
            return Err(Error::DivergentAtOne(k));
        }
        let f = self.opus2.specialize(k, None)?;
        let p = f.as_polynomial().expect("opus-2 entries above 0 are polynomials");
        Ok(p.eval(&Rational::one()))
    }
}

pub fn kolberg_pipeline(a: i64, r: &Rational, p: &UniPoly<Rational>) -> Result<PipelineResult> {
    Pipeline::default().run(a, r, p)
}

pub fn rational_value_at_one(k: i64) -> Result<Rational> {
    Pipeline::default().rational_value_at_one(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfn::RatFn;
    use crate::rational::frac;

    fn p(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    fn q(num: &[i64], den: &[i64]) -> QtElem {
        RatFn::reduce(p(num), p(den)).unwrap()
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional_set(&q(&[1], &[0, 1])), ExceptionalSet::Singleton(1));
        assert_eq!(exceptional_set(&q(&[0, 1], &[1, -1])), ExceptionalSet::Empty);
        assert_eq!(exceptional_set(&QtElem::zero()), ExceptionalSet::AllIntegers);
        assert_eq!(exceptional_set(&q(&[0, 0, 5], &[1])), ExceptionalSet::Singleton(-2));
        assert!(ExceptionalSet::AllIntegers.contains(&rat(3)));
        assert!(!ExceptionalSet::AllIntegers.contains(&frac(1, 2)));
        assert!(!ExceptionalSet::Singleton(1).contains(&frac(1, 2)));
    }

    #[test]
    fn witness_examples() {
        let g = q(&[0, 1], &[1, -1]);
        let w = witness_polynomial(&g, &frac(1, 2), &frac(2, 3)).unwrap();
        // t³ − (4/9)(1−t)²
        let expect = &p(&[0, 0, 0, 1]) - &p(&[1, -2, 1]).scale(&frac(4, 9));
        assert_eq!(w, expect);
        let w0 = witness_polynomial(&q(&[1, 1], &[1]), &rat(0), &rat(1)).unwrap();
        assert_eq!(w0, p(&[0, 1]));
        assert_eq!(
            witness_polynomial(&q(&[1], &[0, 1]), &rat(1), &rat(1)).unwrap_err(),
            Error::DegenerateWitness
        );
    }

    #[test]
    fn negative_r_witness_vanishes() {
        // t0 = 1/4 = (1/2)^2, r = −1/2: t0^r = 2
        let g = q(&[1, 1], &[1, -1]);
        let t0 = frac(1, 4);
        let d = rat(2) * g.eval(&t0).unwrap();
        let w = witness_polynomial(&g, &frac(-1, 2), &d).unwrap();
        assert!(w.eval(&t0).is_zero());
    }

    #[test]
    fn rebase_examples() {
        let r = rebase_poly(&p(&[0, 0, 1]), &rat(1)).unwrap();
        assert_eq!((r.low, r.high), (0, 2));
        assert_eq!(r.coeffs.values().cloned().collect::<Vec<_>>(), vec![rat(1), rat(-2), rat(1)]);
        let r = rebase_poly(&p(&[0, 1]), &rat(0)).unwrap();
        assert_eq!((r.low, r.high), (1, 1));
        let r = rebase_poly(&p(&[1]), &rat(5)).unwrap();
        assert_eq!((r.low, r.high, r.coeffs[&0].clone()), (0, 0, rat(1)));
        assert_eq!(rebase_poly(&p(&[]), &rat(1)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn negative_a_examples() {
        assert_eq!(negative_a_reduction(0, &rat(1), &p(&[1])).unwrap(), (1, p(&[1, 1])));
        assert_eq!(
            negative_a_reduction(-1, &rat(0), &p(&[0, 1])).unwrap(),
            (1, p(&[0, 0, 0, 1]))
        );
        assert_eq!(negative_a_reduction(0, &rat(0), &p(&[1])).unwrap(), (1, p(&[0, 1])));
    }

    #[test]
    fn pipeline_examples() {
        let res = kolberg_pipeline(1, &rat(0), &p(&[1])).unwrap();
        assert_eq!(res.g, q(&[0, 1], &[1]));
        assert_eq!(res.case, PipelineCase::RZero);
        assert_eq!(res.offset, rat(0));
        let res = kolberg_pipeline(1, &rat(0), &p(&[0, 1])).unwrap();
        assert_eq!(res.g, q(&[0, 1], &[1, -1]));
        assert_eq!((res.b, res.c), (0, 0));
        let res = kolberg_pipeline(2, &frac(1, 2), &p(&[1])).unwrap();
        assert_eq!(res.g, RatFn::from_poly(UniPoly::new(vec![rat(4), frac(-4, 3)])));
        assert_eq!(res.offset, rat(4));
        assert!(res.criterion_ok);
        let res = kolberg_pipeline(1, &rat(1), &p(&[1])).unwrap();
        assert_eq!(res.g, QtElem::one());
        // g = 1 is s^0·1, so E = {0} and r = 1 is admissible
        assert_eq!(res.exceptional, ExceptionalSet::Singleton(0));
        assert!(res.criterion_ok);
    }

    #[test]
    fn pipeline_rejects_bad_inputs() {
        assert_eq!(kolberg_pipeline(1, &rat(1), &p(&[])).unwrap_err(), Error::ZeroPolynomial);
        assert!(matches!(
            kolberg_pipeline(3, &rat(-2), &p(&[1])).unwrap_err(),
            Error::ExcludedShift { .. }
        ));
        assert!(kolberg_pipeline(3, &rat(-3), &p(&[1])).is_ok());
    }

    #[test]
    fn pipeline_matches_series() {
        for (a, r, poly) in [
            (1, rat(0), p(&[1])),
            (2, frac(1, 2), p(&[1])),
            (3, frac(-2, 5), p(&[2, -1, 3])),
            (0, rat(2), p(&[1, 1])),
            (-1, rat(0), p(&[0, 1])),
            (2, rat(0), p(&[1, 0, 0, 4])),
        ] {
            let res = kolberg_pipeline(a, &r, &poly).unwrap();
            assert!(res.series_consistent(15).unwrap(), "a={a} r={r}");
        }
    }

    #[test]
    fn values_at_one() {
        assert_eq!(rational_value_at_one(1).unwrap(), rat(1));
        assert_eq!(rational_value_at_one(2).unwrap(), frac(1, 2));
        assert_eq!(rational_value_at_one(3).unwrap(), frac(5, 12));
        assert_eq!(rational_value_at_one(0).unwrap_err(), Error::DivergentAtOne(0));
    }
}
