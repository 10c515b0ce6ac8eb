use thiserror::Error;

/// Errors produced by the codec library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("field order {p}^{m} exceeds the 2^20 cap")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("symbol {value} is not an element of a field of order {order}")]
    NotInField { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("decoding failed: {0}")]
    DecodeFailure(&'static str),
    #[error("edit {index} references position {position} in a word of length {len}")]
    EditOutOfRange {
        index: usize,
        position: usize,
        len: usize,
    },
    #[error("no {tau}-self-matching sequence found after {attempts} attempts; tightest violation at (i, j, k) = ({i}, {j}, {k})")]
    SyncGiveUp {
        tau: f64,
        attempts: u32,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("sequence is not {tau}-self-matching: violation at (i, j, k) = ({i}, {j}, {k})")]
    NotSelfMatching { tau: f64, i: usize, j: usize, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
