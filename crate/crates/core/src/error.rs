//! Error type shared by every engine layer.

use crate::number::Exp;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum Error {
    /// Inversion of a series with no nonzero coefficient below its order.
    #[error("cannot invert a series that is zero up to its truncation order")]
    ZeroSeries,

    /// `u^e` with `u != 1` and a non-integral exponent `e`.
    #[error("unit power u^{exponent} is not integral (unit != 1)")]
    NonIntegralUnitPower { exponent: Exp },

    /// Coefficient requested at or beyond the truncation order.
    #[error("coefficient at q^{exponent} lies beyond truncation order {order}")]
    BeyondTruncation { exponent: Exp, order: Exp },

    /// Cesàro even/odd partial sums failed to stabilize within the cap.
    #[error("partial sums did not stabilize within {cap} terms")]
    NoStabilization { cap: usize },

    /// A Pochhammer factor equals 1 exactly, so its reciprocal has a pole.
    #[error("pochhammer factor vanishes: (1 - q^{exponent}) with unit coefficient 1")]
    PolePochhammer { exponent: Exp },

    /// Infinite product whose factors do not tend to 1 formally.
    #[error("infinite product diverges formally (factor exponent {exponent})")]
    FormalDivergence { exponent: Exp },

    /// Bilateral family whose term valuations fail to grow in one direction.
    #[error("bilateral family diverges toward {direction} (witness index {witness})")]
    DivergentFamily { direction: &'static str, witness: i64 },

    /// Appell-Lerch sum with a denominator vanishing at some integer index.
    #[error("Appell-Lerch denominator 1 - q^(r-1)xz vanishes at r = {index}")]
    PoleAppellLerch { index: i64 },

    /// Root of unity outside the class a radial case requires.
    #[error("root of order {order}, index {index} is outside the case's admissible class")]
    RootClassMismatch { order: u32, index: u32 },

    /// Numeric tail bound cannot reach the requested epsilon at this precision.
    #[error("cannot certify tail below epsilon at {bits} working bits: {why}")]
    PrecisionExhausted { bits: u32, why: String },

    /// A numeric product factor vanishes at the evaluation point.
    #[error("product factor vanishes at the evaluation point")]
    ZeroFactor,

    #[error("syntax error at {line}:{col}: {msg}")]
    SyntaxError { line: u32, col: u32, msg: String },

    #[error("arity error at {line}:{col}: {name} expects {expected}, got {got}")]
    ArityError { name: String, expected: String, got: usize, line: u32, col: u32 },

    #[error("unbound variable `{name}`")]
    UnboundVariable { name: String },

    /// Registry-level problems (unknown id, malformed stanza, bad tuple).
    #[error("registry error: {0}")]
    Registry(String),

    /// Numeric evaluation outside the open unit disk.
    #[error("|q| >= 1: numeric evaluation requires a point inside the unit disk")]
    OutsideUnitDisk,
}
