//! Exact spectral computations on windows of Hecke graphs: layer
//! decompositions, eigenspace dimensions, eigenform propagation, resolvents
//! and closed-form dimension counts.

pub mod charpoly;
pub mod error;
pub mod family;
pub mod field;
pub mod formula;
pub mod layers;
pub mod linalg;
pub mod qpoly;
pub mod solve;
pub mod spectrum;

pub use charpoly::charpoly;
pub use error::SpectralError;
pub use field::{Field, Quotient, Rationals, Split};
pub use layers::{LayeredDecomposition, Propagation};
pub use qpoly::{parse_rational, rat, QPoly};
pub use solve::{DimBounds, Propagated, Resolvent};
pub use family::{interpolate, Family};
pub use formula::{dim_formula, FormulaCase, FormulaParams, FormulaValue};
pub use spectrum::{ExactScalar, NucleusSpectrum};
