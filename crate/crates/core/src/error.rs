//! Error type shared by the engine.

use alloc::string::String;
use core::fmt;

#[derive(Clone, PartialEq, Debug)]
pub enum Error {
    /// A precondition on an operation input was violated.
    Precondition(String),
    /// The initial condition c makes A(0, c) vanish.
    SingularInitialCondition(String),
    /// A series was supplied with fewer terms than the operation requires.
    InsufficientPrecision { have: usize, need: usize },
    /// Division that was expected to be exact left a remainder.
    InexactDivision(String),
    /// The modulus of an extension field is reducible over Q.
    ReducibleModulus(String),
    /// The modular-arithmetic fallback ran out of primes.
    ModularFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::SingularInitialCondition(c) => {
                write!(f, "singular initial condition: A(0, {c}) = 0")
            }
            Error::InsufficientPrecision { have, need } => {
                write!(f, "series precision {have} below required {need}")
            }
            Error::InexactDivision(s) => write!(f, "inexact division: {s}"),
            Error::ReducibleModulus(s) => write!(f, "reducible extension modulus: {s}"),
            Error::ModularFailure(s) => write!(f, "modular computation failed: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
