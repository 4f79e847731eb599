use bundles_p1::BundleError;
use ring_arith::RingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("gap {gap} is not above the deep-cusp threshold {threshold}")]
    BelowThreshold { gap: i64, threshold: i64 },
    #[error("no Hecke point was given")]
    NoPoint,
}

impl From<RingError> for EdgeError {
    fn from(e: RingError) -> Self {
        EdgeError::Bundle(e.into())
    }
}
