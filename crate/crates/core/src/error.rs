use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic orders {0} and {1} have no common embedding")]
    IncompatibleOrders(u64, u64),
    #[error("Galois index {index} is not coprime to order {order}")]
    NotCoprime { index: i64, order: u64 },
    #[error("element is not integral: {0}")]
    NonIntegral(String),
    #[error("expected an element of Q(zeta_{expected}), got order {found}")]
    WrongOrder { expected: u64, found: u64 },
    #[error("modulus {0} is neither 1 nor a power of an odd prime")]
    UnsupportedModulus(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("character is principal")]
    PrincipalCharacter,
    #[error("character of modulus {modulus} is imprimitive (conductor {conductor})")]
    Imprimitive { modulus: u64, conductor: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no samples requested")]
    NoSamples,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
