use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet of size {m}")]
    AlphabetMismatch { letter: u8, m: usize },

    #[error("alphabet size {0} is not supported (need 2 <= m <= 255)")]
    InvalidAlphabet(usize),

    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(u8),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("circular interval with equal endpoints ({0}, {0}) is undefined")]
    UndefinedInterval(u8),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("prefix did not stabilize for n = {n} after {doublings} doublings")]
    InsufficientPrefix { n: usize, doublings: u32 },

    #[error("{what} is only asserted for {bound}, got {value}")]
    OutOfRange {
        what: &'static str,
        bound: String,
        value: usize,
    },

    #[error("word is not a factor of the host prefix")]
    NotAFactor,

    #[error("window of length {len} is shorter than one block of length {m}")]
    DegenerateDecomposition { len: usize, m: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("estimated state of {needed_mb} MB exceeds the budget of {budget_mb} MB")]
    Budget { needed_mb: u64, budget_mb: u64 },

    #[error("table does not cover the range needed: {0}")]
    Coverage(String),

    #[error("parse error: {0}")]
    Parse(String),
}
