use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants split into caller mistakes (bad input, violated preconditions)
/// and internal inconsistencies, see [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} outside the supported range 1..=24")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {m}")]
    ReducibleModulus { m: u32, modulus: u32 },

    #[error("element {bits:#x} does not fit in GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },

    #[error("operands live in different fields (moduli {0:#x} and {1:#x})")]
    FieldMismatch(u32, u32),

    #[error("attempted to invert zero")]
    ZeroInverse,

    #[error("element is not fixed by x -> x^(2^{k}), so it is not in GF(2^{k})")]
    NotInSubfield { k: u32 },

    #[error("GF(2^{small}) does not embed into GF(2^{big})")]
    NoEmbedding { small: u32, big: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree parity violated: {0}")]
    Parity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a perfect square")]
    NotSquare(u64),

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("count vector is inconsistent: non-integral L-polynomial coefficient a_{0}")]
    NonIntegral(usize),

    #[error("Tate's algorithm ended in an unexpected fiber type {0}")]
    UnexpectedFiber(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures that indicate a bug or a broken identity rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::UnexpectedFiber(_) | Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
