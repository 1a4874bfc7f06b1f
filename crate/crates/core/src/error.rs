//! Crate-wide error type.

use crate::parity::Syndrome;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A constructor or operation received an out-of-range parameter.
    InvalidParameter(&'static str),
    /// Two objects that must share a length or alphabet do not.
    DimensionMismatch { expected: usize, actual: usize },
    /// A symbol is not a member of the alphabet.
    SymbolOutOfRange { symbol: u8, q: u32 },
    /// An exhaustive sweep would exceed the enumeration budget.
    BudgetExceeded { needed: u128, budget: u64 },
    /// The generalized construction parameters admit a syndrome whose
    /// zero-pattern column is missing from the filtered matrix.
    Inadmissible { witness: Syndrome },
    /// Perfectness is only defined for strong coverings.
    NotStrongCovering,
    /// The operation is only defined for the stated alphabet size.
    UnsupportedAlphabet { q: u32, reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected length {expected}, got {actual}")
            }
            Error::SymbolOutOfRange { symbol, q } => {
                write!(f, "symbol {symbol} out of range for alphabet of size {q}")
            }
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration budget exceeded: need {needed}, budget {budget}")
            }
            Error::Inadmissible { witness } => write!(
                f,
                "inadmissible construction: syndrome {witness} has no matching column for its zero pattern"
            ),
            Error::NotStrongCovering => write!(f, "code is not a strong covering"),
            Error::UnsupportedAlphabet { q, reason } => {
                write!(f, "unsupported alphabet size {q}: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}
