use thiserror::Error;

/// Errors raised by group construction, automorphism search and the checkers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: order {order} exceeds cap {cap}")]
    OrderCapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("prime {p} does not divide the group order {order}")]
    NotADivisor { p: u64, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("subgroup is not nilpotent")]
    NotNilpotent,
    #[error("quotient is not a non-trivial cyclic group of prime-power order")]
    QuotientNotCyclicPrimePower,
    #[error("twist violates the commutator conditions: {0}")]
    InvalidTwist(String),
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("no suitable prime found below {bound}")]
    PrimeSearchExhausted { bound: u64 },
    #[error("unknown theorem id {0:?}")]
    UnknownTheoremId(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element set is not closed under multiplication: {0}")]
    NotClosed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
