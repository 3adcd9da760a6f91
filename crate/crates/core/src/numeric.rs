//! Interval arithmetic over exact rationals.
//!
//! Endpoints are rounded outward to a relative precision of `prec` bits
//! whenever a denominator grows past `prec` bits; exact small values such as
//! `[2, 2]` stay exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow_int, rat, Rational};
use crate::transcendence::{PipelineCase, PipelineResult};

/// Working precision when no tolerance drives the choice.
pub const DEFAULT_PREC: u64 = 192;

const MAX_TERMS: usize = 20_000;

fn log2_approx(x: &Rational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn scale2(x: &Rational, s: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << s.unsigned_abs());
    if s >= 0 {
        x * p
    } else {
        x / p
    }
}

fn round_dir(x: &Rational, prec: u64, up: bool) -> Rational {
    if x.is_zero() || x.denom().bits() <= prec {
        return x.clone();
    }
    let s = prec as i64 - log2_approx(x);
    let y = scale2(x, s);
    scale2(&if up { y.ceil() } else { y.floor() }, -s)
}

pub fn round_down(x: &Rational, prec: u64) -> Rational {
    round_dir(x, prec, false)
}

pub fn round_up(x: &Rational, prec: u64) -> Rational {
    round_dir(x, prec, true)
}

/// Bits needed so that rounding keeps errors well below `eps` for values of
/// moderate size.
pub fn prec_for(eps: &Rational) -> u64 {
    let bits = (-log2_approx(eps)).max(0) as u64;
    (bits + 32).max(64)
}

fn check_eps(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("eps must be positive, got {eps}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalReal {
    lo: Rational,
    hi: Rational,
}

impl IntervalReal {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(IntervalReal { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        IntervalReal { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn round(&self, prec: u64) -> Self {
        IntervalReal {
            lo: round_down(&self.lo, prec),
            hi: round_up(&self.hi, prec),
        }
    }

    pub fn widen(&self, below: &Rational, above: &Rational) -> Self {
        IntervalReal {
            lo: &self.lo - below,
            hi: &self.hi + above,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            IntervalReal { lo: b, hi: a }
        } else {
            IntervalReal { lo: a, hi: b }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(IntervalReal {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// `selfⁿ` by binary powering, rounding after every product.
    pub fn pow(&self, n: u32, prec: u64) -> Self {
        let mut acc = IntervalReal::point(Rational::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).round(prec);
            }
            n >>= 1;
            if n > 0 {
                base = if base.lo.is_negative() && base.hi.is_positive() {
                    IntervalReal {
                        lo: Rational::zero(),
                        hi: round_up(&(base.abs_max() * base.abs_max()), prec),
                    }
                } else {
                    (&base * &base).round(prec)
                };
            }
        }
        acc
    }
}

impl std::fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &IntervalReal {
    type Output = IntervalReal;
    fn add(self, o: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &IntervalReal {
    type Output = IntervalReal;
    fn sub(self, o: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        IntervalReal {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &IntervalReal {
    type Output = IntervalReal;
    fn mul(self, o: &IntervalReal) -> IntervalReal {
        let ps = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = ps.iter().min().expect("four products").clone();
        let hi = ps.iter().max().expect("four products").clone();
        IntervalReal { lo, hi }
    }
}

/// Encloses `e` to about `prec` bits: `Σ_{n≤N} 1/n! ≤ e ≤ Σ_{n≤N} 1/n! + 2/(N+1)!`.
pub fn e_enclosure(prec: u64) -> IntervalReal {
    let target = scale2(&Rational::one(), -(prec as i64));
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut n = 0i64;
    loop {
        n += 1;
        term /= rat(n);
        sum += &term;
        let tail = &term * rat(2) / rat(n + 1);
        if tail < target {
            return IntervalReal { lo: sum.clone(), hi: sum + tail }.round(prec);
        }
    }
}

/// `e^{−t0}` for `0 ≤ t0 ≤ 1`. Terms `t0ⁿ/n!` decrease, so consecutive partial
/// sums of the alternating series bracket the limit.
pub fn exp_neg_enclosure(t0: &Rational, eps: &Rational) -> Result<IntervalReal> {
    check_eps(eps)?;
    if t0.is_negative() || t0 > &Rational::one() {
        return Err(Error::Domain(format!("t0 = {t0} outside [0, 1]")));
    }
    let half = eps / rat(2);
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut n = 0i64;
    loop {
        n += 1;
        term = term * t0 / rat(n);
        let next = if n % 2 == 1 { &sum - &term } else { &sum + &term };
        if term <= half {
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return Ok(IntervalReal { lo, hi }.round(prec_for(eps)));
        }
        sum = next;
    }
}

fn root_bound(a: &Rational, q: u32, prec: u64, up: bool) -> Rational {
    if q == 1 {
        return round_dir(a, prec, up);
    }
    // a^{1/q} ≈ 2^{log a / q}; scale so the root carries about prec bits
    let s = (prec as i64 - log2_approx(a) / q as i64).max(0);
    let scaled = scale2(a, s * q as i64);
    let m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let mut root = m.nth_root(q);
    if up && root.pow(q) < m {
        root += 1;
    }
    scale2(&Rational::from_integer(root), -s)
}

/// `v^r` for `v > 0` and `r = p/q`: a `q`-th root by integer roots on a dyadic
/// scale, then the integer power `|p|`, then an inversion when `p < 0`.
pub fn pow_rational_enclosure(v: &IntervalReal, r: &Rational, eps: &Rational) -> Result<IntervalReal> {
    check_eps(eps)?;
    if !v.lo.is_positive() {
        return Err(Error::Domain(format!("nonpositive interval {v}")));
    }
    if r.is_zero() {
        return Ok(IntervalReal::point(Rational::one()));
    }
    let q = r
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Domain(format!("denominator of {r} too large")))?;
    let p = r
        .numer()
        .abs()
        .to_u32()
        .ok_or_else(|| Error::Domain(format!("numerator of {r} too large")))?;
    let mut prec = prec_for(eps) + 2 * (32 - p.leading_zeros()) as u64;
    let mut width = Rational::zero();
    for _ in 0..6 {
        let root = IntervalReal {
            lo: root_bound(&v.lo, q, prec, false),
            hi: root_bound(&v.hi, q, prec, true),
        };
        let mut out = root.pow(p, prec);
        if r.is_negative() {
            out = out.recip()?.round(prec);
        }
        width = out.width();
        if &width <= eps {
            return Ok(out);
        }
        prec *= 2;
    }
    Err(Error::Precision {
        width: width.to_string(),
        eps: eps.to_string(),
    })
}

/// Coefficients `uₙ` of `Σ uₙ xⁿ/n!` with a certified tail.
pub trait CoefficientGenerator {
    fn coefficient(&self, n: usize) -> Result<Rational>;

    /// An upper bound on `Σ_{m≥n} |u_m| x^m/m!` for `|x| ≤ x_hi`, given
    /// `q ≥ x_hiⁿ/n!` and `e ≤ e_hi`, or `None` when no bound closes at `n`.
    fn tail_bound(&self, n: usize, q: &Rational, x_hi: &Rational, e_hi: &Rational) -> Option<Rational>;
}

/// `uₙ = Σ_k A_k (n + r)^{n−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPowerSum {
    pub shift: Rational,
    pub terms: Vec<(i64, Rational)>,
}

impl ShiftedPowerSum {
    pub fn new(shift: Rational, terms: Vec<(i64, Rational)>) -> Self {
        ShiftedPowerSum { shift, terms }
    }

    /// `n^{n−k}`.
    pub fn power(k: i64) -> Self {
        ShiftedPowerSum::new(Rational::zero(), vec![(k, Rational::one())])
    }

    pub fn from_pipeline(res: &PipelineResult) -> Self {
        ShiftedPowerSum {
            shift: res.r.clone(),
            terms: res.coeffs.iter().map(|(k, a)| (*k, a.clone())).collect(),
        }
    }
}

impl CoefficientGenerator for ShiftedPowerSum {
    fn coefficient(&self, n: usize) -> Result<Rational> {
        let base = &self.shift + rat(n as i64);
        self.terms.iter().try_fold(Rational::zero(), |acc, (k, a)| {
            if a.is_zero() {
                return Ok(acc);
            }
            Ok(acc + a * pow_int(&base, n as i64 - k)?)
        })
    }

    // With s = n + r > 0 each component a_n = |A_k| s^{n−k} xⁿ/n! satisfies
    //   a_{n+1}/a_n = x (1 + r/(n+1)) (1 + 1/s)^s (1 + 1/s)^{−r−k}
    //              ≤ x e (1 + max(r,0)/(N+1)) (1 + 1/s_N)^{max(0, ⌈−r−k⌉)}  =: ρ
    // for n ≥ N, every factor being nonincreasing in n and (1 + 1/s)^s < e.
    // The tail from N is then at most a_N/(1 − ρ).
    fn tail_bound(&self, n: usize, q: &Rational, x_hi: &Rational, e_hi: &Rational) -> Option<Rational> {
        let s = &self.shift + rat(n as i64);
        if !s.is_positive() {
            return None;
        }
        let one = Rational::one();
        let growth = &one + self.shift.clone().max(Rational::zero()) / rat(n as i64 + 1);
        let mut total = Rational::zero();
        for (k, a) in &self.terms {
            if a.is_zero() {
                continue;
            }
            let m = (-&self.shift - rat(*k)).ceil().to_integer().max(BigInt::zero());
            let m = m.to_i64()?;
            let rho = x_hi * e_hi * &growth * pow_int(&(&one + s.recip()), m).ok()?;
            if rho >= one {
                return None;
            }
            let lead = a.abs() * pow_int(&s, n as i64 - k).ok()? * q;
            total += lead / (&one - rho);
        }
        Some(total)
    }
}

/// `Σ_{n≥1} uₙ xⁿ/n!` for `|x| < 1/e`, truncated once the certified tail drops
/// below `eps/4`.
pub fn partial_sum_enclosure(
    gen: &dyn CoefficientGenerator,
    x: &IntervalReal,
    eps: &Rational,
) -> Result<IntervalReal> {
    check_eps(eps)?;
    let prec = prec_for(eps) + 16;
    let e = e_enclosure(prec);
    let x_hi = round_up(&x.abs_max(), prec);
    if &x_hi * e.hi() >= Rational::one() {
        return Err(Error::TailBound {
            achieved: format!("|x| <= {} not certified below 1/e", x_hi),
        });
    }
    let target = eps / rat(4);
    let mut sum = IntervalReal::zero();
    let mut q = IntervalReal::point(Rational::one());
    let mut q_hi = Rational::one();
    let mut best: Option<Rational> = None;
    for n in 1..=MAX_TERMS {
        let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
        q = (&q * x).scale(&inv_n).round(prec);
        q_hi = round_up(&(q_hi * &x_hi * &inv_n), prec);
        if let Some(tail) = gen.tail_bound(n, &q_hi, &x_hi, e.hi()) {
            if tail <= target {
                let out = sum.widen(&tail, &tail);
                if &out.width() > eps {
                    return Err(Error::Precision {
                        width: out.width().to_string(),
                        eps: eps.to_string(),
                    });
                }
                return Ok(out);
            }
            if best.as_ref().is_none_or(|b| &tail < b) {
                best = Some(tail);
            }
        }
        let u = gen.coefficient(n)?;
        if !u.is_zero() {
            sum = (&sum + &q.scale(&u)).round(prec);
        }
    }
    Err(Error::TailBound {
        achieved: best.map_or("none".to_string(), |b| b.to_string()),
    })
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

/// `Σ_{n≥1} uₙ e^{−n}/n!` for `uₙ = Σ_k A_k n^{n−k}` with every `k ≥ 1`: the
/// series at the boundary point `x = 1/e`, where no geometric tail exists.
///
/// From `n! ≥ √(2πn)(n/e)ⁿ` and `√(2π) ≥ 5/2`, `n^{n−k} e^{−n}/n! ≤ (2/5) n^{−k−1/2}`,
/// so the tail from `N ≥ 2` is at most
/// `(2/5) ∫_{N−1}^∞ x^{−k−1/2} dx = (2/5) (N−1)^{1/2−k}/(k − 1/2)`.
/// Positive and negative `A_k` widen the enclosure on their own side.
pub fn boundary_sum_enclosure(gen: &ShiftedPowerSum, eps: &Rational) -> Result<IntervalReal> {
    check_eps(eps)?;
    if !gen.shift.is_zero() || gen.terms.iter().any(|(k, _)| *k < 1) {
        return Err(Error::Domain(
            "boundary sum needs shift 0 and every k >= 1".to_string(),
        ));
    }
    let prec = prec_for(eps) + 16;
    let einv = exp_neg_enclosure(&Rational::one(), &scale2(&Rational::one(), -(prec as i64)))?;
    let target = eps * rat(7) / rat(8);
    let mut sum = IntervalReal::zero();
    let mut q = IntervalReal::point(Rational::one());
    for n in 1..=MAX_TERMS {
        q = (&q * &einv)
            .scale(&Rational::new(BigInt::one(), BigInt::from(n)))
            .round(prec);
        if n >= 2 {
            let m = BigInt::from(n - 1);
            let root = Rational::from_integer(ceil_sqrt(&m));
            let (mut pos, mut neg) = (Rational::zero(), Rational::zero());
            for (k, a) in &gen.terms {
                let b = a.abs() * rat(2) / rat(5) * &root
                    / (Rational::from_integer(m.pow(*k as u32)) * (rat(*k) - Rational::new(1.into(), 2.into())));
                if a.is_positive() {
                    pos += b;
                } else {
                    neg += b;
                }
            }
            if &pos + &neg <= target {
                let out = sum.widen(&neg, &pos);
                if &out.width() > eps {
                    return Err(Error::Precision {
                        width: out.width().to_string(),
                        eps: eps.to_string(),
                    });
                }
                return Ok(out);
            }
        }
        let u = gen.coefficient(n)?;
        if !u.is_zero() {
            sum = (&sum + &q.scale(&u)).round(prec);
        }
    }
    Err(Error::TailBound {
        achieved: format!("boundary tail above {target} after {MAX_TERMS} terms"),
    })
}

/// Encloses `t0^r g(t0) − x0^r (S(x0) + offset)` (or `g(t0) − S(x0)` when
/// `r = 0`) with `x0 = t0 e^{−t0}`, tightening inner tolerances until the
/// width is at most `eps`.
pub fn residual_check(res: &PipelineResult, t0: &Rational, eps: &Rational) -> Result<IntervalReal> {
    check_eps(eps)?;
    if !t0.is_positive() || t0 >= &Rational::one() {
        return Err(Error::Domain(format!("t0 = {t0} outside (0, 1)")));
    }
    let gen = ShiftedPowerSum::from_pipeline(res);
    let g0 = res.g.eval(t0)?;
    let mut inner = eps / rat(16);
    let mut last = Error::Precision {
        width: "unknown".to_string(),
        eps: eps.to_string(),
    };
    for _ in 0..6 {
        let attempt = (|| -> Result<IntervalReal> {
            let ex = exp_neg_enclosure(t0, &scale2(&inner, -24))?;
            let x0 = ex.scale(t0);
            let s = partial_sum_enclosure(&gen, &x0, &inner)?;
            Ok(match res.case {
                PipelineCase::RZero => &IntervalReal::point(g0.clone()) - &s,
                PipelineCase::RNonzero => {
                    let tr = pow_rational_enclosure(&IntervalReal::point(t0.clone()), &res.r, &inner)?;
                    let xr = pow_rational_enclosure(&x0, &res.r, &inner)?;
                    let full = &s + &IntervalReal::point(res.offset.clone());
                    &tr.scale(&g0) - &(&xr * &full)
                }
            })
        })();
        match attempt {
            Ok(out) if &out.width() <= eps => return Ok(out),
            Ok(out) => {
                last = Error::Precision {
                    width: out.width().to_string(),
                    eps: eps.to_string(),
                }
            }
            Err(e @ Error::Precision { .. }) => last = e,
            Err(e) => return Err(e),
        }
        inner = scale2(&inner, -32);
    }
    Err(last)
}
