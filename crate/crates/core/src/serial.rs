//! JSON codec for rationals, polynomials, rational functions and twisted forms.
//!
//! A rational is the string `"p/q"` (or `"p"`), a polynomial is the array of
//! its coefficients in ascending degree, a rational function is
//! `{"num": [...], "den": [...]}`. Elements of Q(y)(t) nest one level, so their
//! coefficients are themselves `{"num", "den"}` objects in `y`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::UniPoly;
use crate::ratfn::RatFn;
use crate::rational::{parse_rational, Rational};
use crate::tower::{Twist, TwistedForm};

pub trait JsonCodec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

impl JsonCodec for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_str()
            .ok_or_else(|| bad("a \"p/q\" string", v))
            .and_then(parse_rational)
    }
}

impl<F: Field + JsonCodec> JsonCodec for UniPoly<F> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(JsonCodec::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| bad("a coefficient array", v))?;
        Ok(UniPoly::new(
            items.iter().map(F::from_json).collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl<F: Field + JsonCodec> JsonCodec for RatFn<F> {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("num".into(), self.num().to_json());
        m.insert("den".into(), self.den().to_json());
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("{\"num\", \"den\"}", v))?;
        let field = |k: &str| obj.get(k).ok_or_else(|| bad(k, v));
        RatFn::reduce(
            UniPoly::from_json(field("num")?)?,
            UniPoly::from_json(field("den")?)?,
        )
    }
}

impl JsonCodec for TwistedForm {
    fn to_json(&self) -> Value {
        json!({ "twist": self.twist.as_str(), "body": self.body.to_json() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let twist = match v.get("twist").and_then(Value::as_str) {
            Some("plain") => Twist::Plain,
            Some("t_power_y") => Twist::TPowerY,
            _ => return Err(bad("twist \"plain\" or \"t_power_y\"", v)),
        };
        let body = v.get("body").ok_or_else(|| bad("body", v))?;
        Ok(TwistedForm {
            twist,
            body: JsonCodec::from_json(body)?,
        })
    }
}

pub fn rationals_to_json(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(JsonCodec::to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::tower::{t, y, TElem, YElem};
    use num_traits::One;

    #[test]
    fn nested_layout() {
        let one = TElem::one();
        let body = TElem::constant(y().inv().unwrap())
            .checked_div(&(&one - &t()))
            .unwrap();
        let s = serde_json::to_string(&TwistedForm::twisted(body).to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"twist":"t_power_y","body":{"num":[{"num":["-1"],"den":["0","1"]}],"den":[{"num":["-1"],"den":["1"]},{"num":["1"],"den":["1"]}]}}"#
        );
        let back = TwistedForm::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), s);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(frac(-3, 6).to_json(), json!("-1/2"));
        assert_eq!(Rational::from_json(&json!("4/2")).unwrap(), rat(2));
        assert!(Rational::from_json(&json!(2)).is_err());
        let p = YElem::from_json(&json!({"num": ["1"], "den": ["1", "1"]})).unwrap();
        assert_eq!(p, (&y() + &YElem::one()).inv().unwrap());
    }
}
