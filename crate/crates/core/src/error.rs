use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p must be an odd prime (got {0}, which is not prime)")]
    NotPrime(u64),
    #[error("p must be an odd prime (got 2)")]
    NotOdd,
    #[error("a + b must be positive")]
    ZeroHolonomyBlock,
    #[error("c must be at least 1")]
    TorsionViolation,
    #[error("dimension is even (b + c = {0})")]
    EvenDimension(u64),
    #[error("too many spin structures to list (b + c = {0})")]
    TooManyStructures(u64),
    #[error("unsupported ideal label {0:?}; only \"principal\" is supported")]
    UnsupportedIdeal(String),
    #[error("class number formula needs p = 3 mod 4 (got {0})")]
    ClassNumberDomain(u64),
    #[error("kernel dimension is not an integer: {0}")]
    NonIntegerKernel(String),
    #[error("oracle residual too large: {0}")]
    OracleResidual(String),
    #[error("s must be greater than 1 (got {0})")]
    DomainError(f64),
    #[error("parameters are not exceptional")]
    NotExceptional,
    #[error("mu = {twice_mu}/2 is not admissible for h = {h}")]
    InvalidMu { h: u8, twice_mu: u64 },
    #[error("h must be 1 or 2 (got {0})")]
    InvalidPeriodicity(u64),
    #[error("cannot combine radicals sqrt({0}) and sqrt({1})")]
    MixedRadicands(u64, u64),
    #[error("cannot add real and imaginary radical values")]
    MixedUnits,
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
