use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible {
        value: BigUint,
        modulus: BigUint,
        gcd: BigUint,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: String },

    #[error("no admissible Lucas parameters after {0} draws")]
    NoAdmissibleParams(u32),

    #[error("D-search overflow: no D with jacobi(D, n) = -1 among the first {0} candidates")]
    DSearchOverflow(u32),

    #[error("{0} is a perfect square")]
    PerfectSquare(BigUint),

    #[error("generator gave up after {0} candidates")]
    IterationCap(u64),

    #[error("could not parse integer {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn capacity<T>(what: impl Into<String>, limit: impl ToString) -> Result<T> {
    Err(Error::Capacity {
        what: what.into(),
        limit: limit.to_string(),
    })
}
