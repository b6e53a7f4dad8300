use alloc::string::String;

use crate::Scalar;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("r must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("r = {0} is divisible by 4; 3-manifold constants are not defined")]
    OrderDivisibleByFour(u32),
    #[error("modified dimension has a pole at {0}")]
    Pole(Scalar),
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator {letter} needs at least {needed} strands, braid has {strands}")]
    GeneratorOutOfRange { letter: i32, needed: usize, strands: usize },
    #[error("unknown knot name {0:?}")]
    UnknownKnot(String),
    #[error("braid closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("expected {expected} {what}, got {got}")]
    Arity { what: &'static str, expected: usize, got: usize },
    #[error("tangle endomorphism is not scalar (deviation {0:e})")]
    NonScalar(f64),
    #[error("no component carries a typical color")]
    NoTypicalColor,
    #[error("cut component must carry a single module, not a formal color")]
    FormalCut,
    #[error("formal color mixes module families")]
    MixedFormalColor,
    #[error("color {0} is not allowed here")]
    IllegalColor(String),
    #[error("presentation is not computable: {0}")]
    NotComputable(String),
    #[error("incompatible triple: {0}")]
    Incompatible(String),
    #[error("framing must be non-zero")]
    ZeroFraming,
    #[error("auxiliary color {0} is degenerate")]
    DegenerateAlpha(Scalar),
    #[error("matrix is singular")]
    Singular,
    #[error("module shapes do not match: {0}")]
    Shape(String),
}

impl Error {
    /// Parse-level failures, as opposed to contract violations or numeric trouble.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::GeneratorOutOfRange { .. } | Error::UnknownKnot(_))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonScalar(_) | Error::Singular)
    }
}
