use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {0} exceeds the supported range")]
    FieldTooLarge(u64),
    #[error("defining polynomial must be monic with coefficients below p")]
    BadModulus,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("not a point descriptor: {0}")]
    BadPoint(String),
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("ring has more than 2^32 elements")]
    RingTooLarge,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("group of order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: u128, budget: u128 },
    #[error("points of a level ring must be pairwise distinct")]
    RepeatedPoint,
}
