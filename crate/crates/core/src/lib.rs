//! Exact algebra for the tree-function series `Σ (n+r)^{n−a} P(n) xⁿ/n!`.
//!
//! Rationals, polynomials and rational functions over the tower
//! `Q ⊂ Q(y) ⊂ Q(y)(t)`, the coefficient transform under `x = t e^{−t}`, the
//! ladder of closed forms, the pipeline producing `g(t)`, and interval checks.

pub mod association;
pub mod error;
pub mod field;
pub mod identities;
pub mod latex;
pub mod numeric;
pub mod poly;
pub mod quatuor;
pub mod ratfn;
pub mod rational;
pub mod serial;
pub mod series;
pub mod tower;
pub mod transcendence;

pub use error::{Error, Result};
pub use field::Field;
pub use poly::{Degree, UniPoly};
pub use ratfn::RatFn;
pub use rational::Rational;
pub use tower::{QtElem, TElem, Twist, TwistedForm, YElem};
