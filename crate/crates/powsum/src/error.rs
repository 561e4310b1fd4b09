use num_bigint::BigUint;
use thiserror::Error;

/// Errors distinguish resource-budget refusals from contract violations;
/// mathematical outcomes (insoluble, unknown) are never reported as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid equation: {0}")]
    InvalidEquation(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error(
        "cannot factor within budget: cofactor {cofactor} has no prime factor \
         up to {trial_limit} and exceeds the {digit_budget}-digit budget for \
         exact resolution"
    )]
    FactorBudget {
        cofactor: BigUint,
        trial_limit: u64,
        digit_budget: usize,
    },

    #[error(
        "counting refused: rhs {rhs} with {m} terms needs ~{estimate} enumeration \
         states (limit {node_limit}) and {entries} table entries (limit {entry_limit})"
    )]
    OracleBudget {
        rhs: BigUint,
        m: u32,
        estimate: String,
        node_limit: u64,
        entries: String,
        entry_limit: u64,
    },

    #[error("zero-one residue criterion misuse: x^{n} mod {modulus} takes value {found}, not in {{0,1}}")]
    ResiduesNotZeroOne { n: u32, modulus: u64, found: u64 },

    #[error(
        "plus-minus residue criterion misuse: phi({p}^{k})/2 must divide {n} with odd quotient"
    )]
    PlusMinusExponent { p: u64, k: u32, n: u32 },

    #[error("binomial divisibility check requires {p}^{k} to divide {n}")]
    BinomialHypothesis { p: u64, k: u32, n: u64 },

    #[error("descent step requires {p} to be a phi-divisor of {n} at a degree k with m <= p^k - 1 (m = {m})")]
    DescentHypothesis { p: u64, n: u32, m: u32 },

    #[error("natural-solution analysis requires an equation in Natural mode")]
    WrongMode,
}
