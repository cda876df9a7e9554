use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidSpec(String),

    #[error("block {kind}({r},{s}) is out of range for G({n},{total})", total = .n + .k)]
    BlockOutOfRange {
        kind: &'static str,
        r: usize,
        s: usize,
        n: usize,
        k: usize,
    },

    #[error("variable tables differ")]
    VariableMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("substitution needs a negative power ({exponent}) of factor {factor}")]
    NegativeFactorExponent { factor: usize, exponent: i64 },

    #[error("cannot evaluate at a point where `{0}` is zero")]
    ZeroCoordinate(String),

    #[error("the reduced frame has no arrow-sum convention")]
    ReducedFrame,

    #[error("malformed polynomial JSON: {0}")]
    Json(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
