//! The tower Q ⊂ Q(y) ⊂ Q(y)(t) and the `t^y`-twisted closed forms.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::latex;
use crate::poly::UniPoly;
use crate::ratfn::RatFn;
use crate::rational::Rational;

/// Element of Q(y).
pub type YElem = RatFn<Rational>;

/// Element of Q(y)(t).
pub type TElem = RatFn<YElem>;

/// Rational function of `t` over Q.
pub type QtElem = RatFn<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    /// The form is `R(t)` itself.
    Plain,
    /// The form is `t^y · R(t, y)`.
    TPowerY,
}

impl Twist {
    pub fn as_str(self) -> &'static str {
        match self {
            Twist::Plain => "plain",
            Twist::TPowerY => "t_power_y",
        }
    }
}

/// A closed-form ladder entry `F_k`: either `R(t)` or `t^y·R(t, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedForm {
    pub twist: Twist,
    pub body: TElem,
}

impl TwistedForm {
    pub fn plain(body: TElem) -> Self {
        TwistedForm {
            twist: Twist::Plain,
            body,
        }
    }

    pub fn twisted(body: TElem) -> Self {
        TwistedForm {
            twist: Twist::TPowerY,
            body,
        }
    }

    pub fn latex(&self) -> String {
        latex::twisted_form(self)
    }
}

/// `y` as an element of Q(y).
pub fn y() -> YElem {
    RatFn::var()
}

/// `t` as an element of Q(y)(t).
pub fn t() -> TElem {
    RatFn::var()
}

/// Lifts a Q-polynomial in `t` into Q(y)[t].
pub fn lift_poly(p: &UniPoly<Rational>) -> UniPoly<YElem> {
    p.map(|c| YElem::constant(c.clone()))
}

/// Lifts a rational function over Q into Q(y)(t), coefficients constant in `y`.
pub fn lift(f: &QtElem) -> TElem {
    f.map(|c| YElem::constant(c.clone()))
        .expect("lifting preserves a nonzero denominator")
}

fn specialize_coeffs(
    p: &UniPoly<YElem>,
    y0: &Rational,
    part: &'static str,
) -> Result<UniPoly<Rational>> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for (i, c) in p.coeffs().iter().enumerate() {
        match c.eval(y0) {
            Ok(v) => out.push(v),
            Err(_) => {
                return Err(Error::SpecializationPole {
                    y: y0.clone(),
                    part,
                    coefficient: format!("t^{i}: {}", latex::y_elem(c)),
                })
            }
        }
    }
    Ok(UniPoly::new(out))
}

/// Evaluates every y-coefficient of `e` at `y0`, giving a reduced element of Q(t).
pub fn substitute_y(e: &TElem, y0: &Rational) -> Result<QtElem> {
    let num = specialize_coeffs(e.num(), y0, "numerator")?;
    let den = specialize_coeffs(e.den(), y0, "denominator")?;
    if den.is_zero() {
        return Err(Error::SpecializationPole {
            y: y0.clone(),
            part: "denominator",
            coefficient: "whole denominator vanishes".into(),
        });
    }
    RatFn::reduce(num, den)
}

/// d/dt on Q(y)(t).
pub fn t_derivative(e: &TElem) -> TElem {
    e.derivative()
}

/// True when every coefficient of `e` is a constant of Q(y).
pub fn is_y_free(e: &TElem) -> bool {
    e.num()
        .coeffs()
        .iter()
        .chain(e.den().coeffs())
        .all(|c| c.as_constant().is_some())
}

/// Drops the y-level of a y-free element.
pub fn to_qt(e: &TElem) -> Option<QtElem> {
    is_y_free(e).then(|| substitute_y(e, &Rational::zero()).expect("y-free element"))
}
