use alloc::string::String;
use core::fmt;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    InvalidInput(String),
    /// The height of zero is never evaluated.
    ZeroHeight,
    /// Degree (or field degree) outside what the operation supports.
    UnsupportedDegree(usize),
    /// A run would exceed its configured work budget; carries the estimate.
    Budget { estimate: u128, budget: u128 },
    /// A certified decision could not be reached below the precision ceiling.
    Undecided { max_precision: u32 },
    /// A value does not fit the fixed-width range an operation works in.
    Overflow(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ZeroHeight => f.write_str("height of 0 is undefined"),
            Error::UnsupportedDegree(d) => write!(f, "unsupported degree {d}"),
            Error::Budget { estimate, budget } => {
                write!(f, "estimated work {estimate} exceeds budget {budget}")
            }
            Error::Undecided { max_precision } => {
                write!(f, "undecided at maximum precision of {max_precision} bits")
            }
            Error::Overflow(msg) => write!(f, "range overflow: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
