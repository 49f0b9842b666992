//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// Malformed argument (empty grid, unsorted list, bad shape).
    InvalidArgument(String),
    /// A scan hit its truncation cap before the quantity resolved.
    Truncation(String),
    /// A stated precondition (certificate, condition check) is missing or fails.
    Precondition(String),
    /// Quadrature did not reach the requested tolerance.
    Quadrature(String),
    /// Configuration file could not be parsed or has the wrong schema.
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Truncation(msg) => write!(f, "truncation error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition not met: {msg}"),
            Error::Quadrature(msg) => write!(f, "quadrature error: {msg}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
