use core::fmt;

/// Errors raised by the exact computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the operation's domain.
    InvalidArgument(&'static str),
    /// A resource guard rejected the request.
    GuardExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    DivisionByZero,
    /// A point passed as an element of `[0, 1)` lies outside it.
    PointOutOfRange,
    /// A value expected to have a power-of-two denominator does not.
    NotDyadic,
    /// A string could not be parsed as a number.
    Parse,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::GuardExceeded { what, value, limit } => {
                write!(f, "{what} = {value} exceeds the limit {limit}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::PointOutOfRange => f.write_str("point is not in [0, 1)"),
            Error::NotDyadic => f.write_str("value is not a dyadic rational"),
            Error::Parse => f.write_str("malformed number"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn guard(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
