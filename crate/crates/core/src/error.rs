use thiserror::Error;

/// Errors produced by the word algebra, the enumerators and the bound checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid alphabet ({a},{b}): letters must satisfy 1 <= a < b")]
    InvalidAlphabet { a: u32, b: u32 },

    #[error("letter {letter} is not in the alphabet {{{a},{b}}}")]
    LetterNotInAlphabet { letter: u32, a: u32, b: u32 },

    #[error("run profile is undefined for the empty word")]
    EmptyWord,

    #[error("run of length {length} exceeds the largest letter {max}")]
    RunTooLong { length: u32, max: u32 },

    #[error("word is not differentiable: {0}")]
    NotDifferentiable(crate::operators::NotDifferentiable),

    #[error("word is not smooth")]
    NotSmooth,

    #[error("word is not left fully extendable")]
    NotLfe,

    #[error("word is not differentiable twice")]
    NotTwiceDifferentiable,

    #[error("alphabet ({a},{b}) is not even")]
    NotEvenAlphabet { a: u32, b: u32 },

    #[error("resource limit exceeded: {what} would hold {size} items (cap {cap})")]
    ResourceLimit {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("length bound {max_len} too small: a level-{level} word needs length {needed}")]
    BoundTooSmall {
        level: u32,
        max_len: usize,
        needed: usize,
    },

    #[error("frequency bound xi = {xi} must lie strictly between 0 and 1/2")]
    XiOutOfRange { xi: f64 },

    #[error("empty range: {0}")]
    EmptyRange(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
