use crate::field::Split;
use graph_core::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("window holds only {layers} complete layers; at least 2 are needed")]
    ShallowWindow { layers: usize },
    #[error("decomposition is not propagative")]
    NotPropagative,
    #[error("λ = 0 is excluded when the Hecke point is ramified")]
    ZeroEigenvalue,
    #[error("λ is a root of the nucleus factor {factor}")]
    InNucleusSpectrum { factor: String },
    #[error("seed does not satisfy the boundary equation")]
    BadSeed,
    #[error("the window does not determine {what}")]
    Undetermined { what: String },
    #[error("layer block {layer} is singular")]
    SingularLayer { layer: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("zero divisor {}", .0.factor)]
    Split(Split),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
}

impl From<Split> for SpectralError {
    fn from(s: Split) -> Self {
        SpectralError::Split(s)
    }
}
