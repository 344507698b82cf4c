use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Failure of a text parser: byte offset into the input plus the tokens that
/// would have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}", self.position + 1)?;
        if let Some(msg) = &self.message {
            write!(f, ": {msg}")?;
        }
        if !self.expected.is_empty() {
            f.write_str(": expected ")?;
            for (i, tok) in self.expected.iter().enumerate() {
                if i > 0 {
                    f.write_str(if i + 1 == self.expected.len() { " or " } else { ", " })?;
                }
                f.write_str(tok)?;
            }
        }
        if self.found.is_empty() {
            f.write_str(", found end of input")
        } else {
            write!(f, ", found `{}`", self.found)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} appears more than once")]
    DuplicatePrime(u64),
    #[error("natural numbers must be positive")]
    Zero,
    #[error("{divisor} does not divide {number}")]
    NotDivisor { divisor: String, number: String },
    #[error("{0} and {1} are not rationally connected")]
    NotConnected(String, String),
    #[error("density must be at least 1, got {0}")]
    DensityBelowOne(String),
    #[error("invalid quadratic surd: {0}")]
    InvalidSurd(&'static str),
    #[error("S(r, s) needs an infinite Steinitz number, got {0}")]
    NaturalBase(String),
    #[error("{element} is not a member of {set}")]
    NotMember { element: String, set: String },
    #[error("{0} has no base Steinitz number")]
    NoBase(String),
    #[error("density is undefined at the natural number {0}")]
    NaturalElement(String),
    #[error("chain is not ascending at position {0}")]
    NotAscending(usize),
    #[error("tail density lies below the chain prefix")]
    TailBelowPrefix,
    #[error("empty chain")]
    EmptyChain,
    #[error("tail rule {0} does not apply to sets of natural numbers")]
    TailOnNaturals(&'static str),
    #[error("algebra is not unital")]
    NotUnital,
    #[error("invalid idempotent: {0}")]
    InvalidIdempotent(String),
    #[error("invalid divisor chain: {0}")]
    InvalidDivisorChain(String),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("{0}")]
    Parse(ParseError),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
