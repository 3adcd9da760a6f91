use thiserror::Error;

use crate::Rational;

/// Errors raised by the algebra, ladder, pipeline and interval modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at origin")]
    PoleAtOrigin,

    #[error("y-specialization pole at y = {y}: coefficient {coefficient} of the {part}")]
    SpecializationPole {
        y: Rational,
        part: &'static str,
        coefficient: String,
    },

    #[error("y-specialization pole in term k = {k}: {source}")]
    TermPole { k: i64, source: Box<Error> },

    #[error("ascent requires polynomial part")]
    AscentNotPolynomial,

    #[error("ascent requires a zero constant term")]
    AscentConstantTerm,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate: witness vanishes identically")]
    DegenerateWitness,

    #[error("theorem hypothesis violated: r = {r} lies in {{-1, ..., -{max}}} for a = {a}")]
    ExcludedShift { a: i64, r: Rational, max: i64 },

    #[error("family {0} needs a value for y")]
    MissingY(&'static str),

    #[error("divergent at t = 1: k = {0} must be >= 1")]
    DivergentAtOne(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tail bound failed: achieved ratio bound {achieved}")]
    TailBound { achieved: String },

    #[error("precision not reached: width {width} exceeds {eps}")]
    Precision { width: String, eps: String },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
