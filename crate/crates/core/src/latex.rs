//! LaTeX rendering of rationals, polynomials and rational functions.
//!
//! Polynomials are written in ascending degree order without spaces, e.g.
//! `1-t` or `4-\frac{4}{3}t`. Denominators are sign-normalized so their
//! lowest-degree coefficient reads positive.

use num_traits::{One, Signed};

use crate::field::Field;
use crate::poly::UniPoly;
use crate::ratfn::RatFn;
use crate::rational::Rational;
use crate::tower::{Twist, TwistedForm, YElem};

/// How a coefficient renders: sign, absolute body, and whether the body can
/// sit next to a variable power without parentheses.
pub struct Term {
    pub negative: bool,
    pub body: String,
    pub atomic: bool,
    pub unit: bool,
}

pub trait LatexCoeff: Field {
    fn term(&self) -> Term;
}

pub fn rational(q: &Rational) -> String {
    let t = q.term();
    if t.negative {
        format!("-{}", t.body)
    } else {
        t.body
    }
}

fn rational_abs(q: &Rational) -> String {
    let a = q.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

impl LatexCoeff for Rational {
    fn term(&self) -> Term {
        Term {
            negative: self.is_negative(),
            body: rational_abs(self),
            atomic: true,
            unit: self.abs().is_one(),
        }
    }
}

impl LatexCoeff for YElem {
    fn term(&self) -> Term {
        if let Some(c) = self.as_constant() {
            return c.term();
        }
        let (num, den) = normalize_sign(self.num(), self.den());
        let mono = num.as_monomial().map(|(c, m)| (c.term(), m));
        if den.is_one() {
            return match mono {
                Some((c, m)) => Term {
                    negative: c.negative,
                    body: format!("{}{}", coeff_prefix(&c), var_power("y", m)),
                    atomic: true,
                    unit: false,
                },
                None => Term {
                    negative: false,
                    body: poly("y", &num),
                    atomic: false,
                    unit: false,
                },
            };
        }
        let (negative, num) = match mono {
            Some((c, _)) if c.negative => (true, -&num),
            _ => (false, num),
        };
        Term {
            negative,
            body: format!("\\frac{{{}}}{{{}}}", poly("y", &num), poly("y", &den)),
            atomic: true,
            unit: false,
        }
    }
}

fn coeff_prefix(c: &Term) -> String {
    if c.unit {
        String::new()
    } else if c.atomic {
        c.body.clone()
    } else {
        format!("\\left({}\\right)", c.body)
    }
}

fn var_power(var: &str, m: usize) -> String {
    match m {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{{{m}}}"),
    }
}

/// Ascending-order rendering of a polynomial in `var`.
pub fn poly<F: LatexCoeff>(var: &str, p: &UniPoly<F>) -> String {
    let mut out = String::new();
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = c.term();
        let body = if m == 0 {
            t.body.clone()
        } else {
            format!("{}{}", coeff_prefix(&t), var_power(var, m))
        };
        let body = if m == 0 && !t.atomic && !out.is_empty() {
            format!("\\left({body}\\right)")
        } else {
            body
        };
        match (out.is_empty(), t.negative) {
            (true, true) => out.push('-'),
            (false, true) => out.push('-'),
            (false, false) => out.push('+'),
            (true, false) => {}
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn normalize_sign<F: LatexCoeff>(num: &UniPoly<F>, den: &UniPoly<F>) -> (UniPoly<F>, UniPoly<F>) {
    let flip = den
        .valuation()
        .map(|v| den.coeffs()[v].term().negative)
        .unwrap_or(false);
    if flip {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    }
}

pub fn ratfn<F: LatexCoeff>(var: &str, f: &RatFn<F>) -> String {
    let (num, den) = normalize_sign(f.num(), f.den());
    if den.is_one() {
        poly(var, &num)
    } else {
        format!("\\frac{{{}}}{{{}}}", poly(var, &num), poly(var, &den))
    }
}

pub fn y_elem(c: &YElem) -> String {
    let t = c.term();
    if t.negative {
        format!("-{}", t.body)
    } else {
        t.body
    }
}

/// `t^{y}` times the body, written as a single fraction.
pub fn twisted_form(form: &TwistedForm) -> String {
    let (num, den) = normalize_sign(form.body.num(), form.body.den());
    let top = match form.twist {
        Twist::Plain => poly("t", &num),
        Twist::TPowerY => match num.as_monomial() {
            Some((c, m)) => {
                let c = c.term();
                let power = if m == 0 {
                    "t^{y}".to_string()
                } else {
                    format!("t^{{y+{m}}}")
                };
                let sign = if c.negative { "-" } else { "" };
                format!("{sign}{}{power}", coeff_prefix(&c))
            }
            None => format!("t^{{y}}\\left({}\\right)", poly("t", &num)),
        },
    };
    if den.is_one() {
        top
    } else {
        format!("\\frac{{{top}}}{{{}}}", poly("t", &den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::tower::{t, y, TElem};

    #[test]
    fn renders_rationals() {
        assert_eq!(rational(&frac(-4, 3)), "-\\frac{4}{3}");
        assert_eq!(rational(&rat(7)), "7");
    }

    #[test]
    fn renders_polynomials_ascending() {
        let p = UniPoly::new(vec![rat(4), frac(-4, 3)]);
        assert_eq!(poly("t", &p), "4-\\frac{4}{3}t");
        let q = UniPoly::new(vec![rat(0), rat(1), rat(0), rat(-1)]);
        assert_eq!(poly("t", &q), "t-t^{3}");
        assert_eq!(poly::<Rational>("t", &UniPoly::zero()), "0");
    }

    #[test]
    fn f0_renders_as_over_one_minus_t() {
        let one = TElem::one();
        let body = one.checked_div(&(&one - &t())).unwrap();
        assert_eq!(
            twisted_form(&TwistedForm::twisted(body)),
            "\\frac{t^{y}}{1-t}"
        );
    }

    #[test]
    fn y_coefficients() {
        let c = y().inv().unwrap();
        assert_eq!(y_elem(&c), "\\frac{1}{y}");
        assert_eq!(y_elem(&(&y() + &YElem::one())), "1+y");
    }
}
