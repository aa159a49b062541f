use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("value is not {p}-integral: {p} divides the reduced denominator")]
    NotPIntegral { p: u64 },

    #[error("{value} is not invertible modulo {p}^{precision}")]
    NotInvertible { value: u64, p: u64, precision: u32 },

    #[error("2^({p}-1) - 1 is not divisible by {p}; {p} is not an odd prime")]
    NonExactDivision { p: u64 },

    #[error("{p} is outside the supported range for modular arithmetic (odd primes below 65536)")]
    UnsupportedPrime { p: u64 },

    #[error("claim {claim} is not applicable at p = {p}")]
    NotApplicable { claim: String, p: u64 },

    #[error("unknown claim id: {0}")]
    UnknownClaimId(String),

    #[error(
        "internal path mismatch for {claim} at p = {p}: oracle {oracle_lhs}/{oracle_rhs}, fast {fast_lhs}/{fast_rhs}"
    )]
    InternalPathMismatch {
        claim: String,
        p: u64,
        oracle_lhs: u64,
        oracle_rhs: u64,
        fast_lhs: u64,
        fast_rhs: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
