use bundles_p1::BundleError;
use hecke_edges::EdgeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error(transparent)]
    Edge(#[from] EdgeError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("builders disagree at gap {gap}, level {level}")]
    BuilderMismatch { gap: u32, level: String },
    #[error("target gap {gap}, level {level} is missing from the vertex table")]
    MissingTarget { gap: u32, level: String },
    #[error("the cusp-rule builder needs every gap above {threshold}")]
    NucleusInWindow { threshold: i64 },
    #[error("malformed graph file: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("monodromy discrepancy at gap {gap} is not a torus element")]
    OutsideTorus { gap: u32 },
}

impl From<serde_json::Error> for GraphError {
    fn from(e: serde_json::Error) -> Self {
        GraphError::Parse(e.to_string())
    }
}
