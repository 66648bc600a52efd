use core::fmt;

use num_bigint::BigUint;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested characteristic is not prime.
    NonPrime(u64),
    /// Extension degree must be at least 1.
    InvalidDegree(u32),
    /// The requested order has more than one prime factor (or is < 2).
    NotPrimePower(u64),
    /// The field order is outside the supported envelope (`q <= 2^16`).
    FieldTooLarge(u64),
    /// Inversion of zero.
    DivisionByZero,
    /// An element code is not in `[0, q)`.
    EntryOutOfRange { code: u64, q: u32 },
    /// Rows of differing lengths were supplied for one matrix.
    RaggedRows,
    /// A vector or matrix has the wrong length or shape.
    DimensionMismatch { expected: usize, found: usize },
    /// Two operands live over different fields.
    FieldMismatch,
    /// `d > n`.
    InvalidDimension { n: usize, d: usize },
    /// A tuple that is not a valid pivot sequence for `(n, d)`.
    InvalidPivots,
    /// An enumeration would yield more items than the configured cap.
    EnumerationTooLarge { size: BigUint, cap: u64 },
    /// The brute-force oracle would have to examine too many tuples.
    BudgetExceeded { tuples: BigUint, budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidDegree(k) => write!(f, "extension degree must be >= 1, got {k}"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::FieldTooLarge(q) => {
                write!(f, "field order {q} exceeds the supported maximum 65536")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::EntryOutOfRange { code, q } => {
                write!(f, "element code {code} out of range for a field of order {q}")
            }
            Error::RaggedRows => f.write_str("matrix rows have differing lengths"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::FieldMismatch => f.write_str("operands are over different fields"),
            Error::InvalidDimension { n, d } => {
                write!(f, "invalid dimension: d = {d} must satisfy 0 <= d <= n = {n}")
            }
            Error::InvalidPivots => f.write_str("not a valid pivot sequence"),
            Error::EnumerationTooLarge { size, cap } => write!(
                f,
                "enumeration would yield {size} items, above the cap of {cap} (use force to override)"
            ),
            Error::BudgetExceeded { tuples, budget } => write!(
                f,
                "oracle would examine {tuples} tuples, above the budget of {budget}"
            ),
        }
    }
}

impl core::error::Error for Error {}
