use ring_arith::RingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("bad divisor entry `{0}`")]
    BadDivisor(String),
    #[error("divisor parts share the point {0}")]
    NotDisjoint(String),
    #[error("h0 profile of the modified sheaf is inconsistent with colength {colength} (expected {expected}, found {found} at twist {twist})")]
    InconsistentColength {
        colength: i64,
        twist: i64,
        expected: i64,
        found: i64,
    },
    #[error("no global frame found for the modified sheaf")]
    NoFrame,
    #[error("malformed level `{0}`")]
    BadLevel(String),
    #[error("level matrix is not invertible")]
    NotInvertible,
}
