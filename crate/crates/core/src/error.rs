use core::fmt;

use alloc::string::String;

use crate::prime::CompositeWitness;
use crate::ExactNat;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested modulus failed the primality test.
    NotPrime { p: u64, witness: CompositeWitness },
    /// Two values built over different primes were combined.
    ModulusMismatch { left: u64, right: u64 },
    /// A stored digit is not a valid base-`p` digit.
    DigitOutOfRange { index: usize, digit: u64, p: u64 },
    /// An argument lies outside the range an operation accepts.
    ArgumentOutOfRange {
        name: &'static str,
        value: u64,
        bound: u64,
    },
    /// The input is not a base-10 natural number.
    MalformedDecimal(String),
    /// An exact factorial beyond the configured cap was requested.
    FactorialCapExceeded { requested: ExactNat, cap: u64 },
    /// A polynomial would exceed the configured degree cap.
    DegreeCapExceeded { degree: u128, cap: usize },
    /// An exact quotient left a remainder. Always an implementation bug.
    NonExactDivision(&'static str),
    /// A `(k, i)` pair does not index a member of the q family.
    InvalidIndex {
        k: usize,
        i: u64,
        reason: &'static str,
    },
    /// A verification sweep cannot run with the given configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime { p, witness } => write!(f, "{p} is not prime: {witness}"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            Error::DigitOutOfRange { index, digit, p } => {
                write!(
                    f,
                    "digit {digit} at position {index} is not a base-{p} digit"
                )
            }
            Error::ArgumentOutOfRange { name, value, bound } => {
                write!(f, "{name} = {value} is out of range (must be < {bound})")
            }
            Error::MalformedDecimal(s) => write!(f, "not a decimal natural number: {s:?}"),
            Error::FactorialCapExceeded { requested, cap } => {
                write!(f, "exact factorial of {requested} exceeds the cap of {cap}")
            }
            Error::DegreeCapExceeded { degree, cap } => {
                write!(f, "polynomial degree {degree} exceeds the cap of {cap}")
            }
            Error::NonExactDivision(what) => write!(f, "non-exact division computing {what}"),
            Error::InvalidIndex { k, i, reason } => {
                write!(f, "invalid q index (k={k}, i={i}): {reason}")
            }
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
