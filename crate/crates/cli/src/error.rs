use bundles_p1::BundleError;
use graph_core::GraphError;
use hecke_edges::EdgeError;
use ring_arith::RingError;
use spectral::SpectralError;
use thiserror::Error;

/// Failures grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    /// A verification report with failing checks; the report itself was
    /// already emitted.
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Invariant(_) | CliError::ChecksFailed(_) => 4,
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::NotInvertible => CliError::Invariant(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<BundleError> for CliError {
    fn from(e: BundleError) -> Self {
        match e {
            BundleError::Ring(r) => r.into(),
            BundleError::BadDivisor(_) | BundleError::NotDisjoint(_) | BundleError::BadLevel(_) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<EdgeError> for CliError {
    fn from(e: EdgeError) -> Self {
        match e {
            EdgeError::Bundle(b) => b.into(),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Edge(x) => x.into(),
            GraphError::Bundle(x) => x.into(),
            GraphError::NucleusInWindow { .. } | GraphError::Parse(_) | GraphError::Precondition(_) => {
                CliError::Config(e.to_string())
            }
            GraphError::BuilderMismatch { .. } | GraphError::MissingTarget { .. } | GraphError::OutsideTorus { .. } => {
                CliError::Invariant(e.to_string())
            }
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        use SpectralError::*;
        match e {
            Graph(g) => g.into(),
            NotPropagative | ZeroEigenvalue | InNucleusSpectrum { .. } | BadSeed => CliError::Hypothesis(e.to_string()),
            ShallowWindow { .. } | Undetermined { .. } | Invalid(_) | Split(_) => CliError::Config(e.to_string()),
            SingularLayer { .. } | Invariant(_) | Interpolation(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
