//! Graphs of Hecke operators on `Bun_{PGL₂}` of the projective line with
//! level structure, and the structural checks run on them.

pub mod components;
pub mod covering;
pub mod error;
pub mod export;
pub mod graph;
pub mod monodromy;

pub use components::{split_components, ComponentReport};
pub use covering::{check_covering, CoveringOutcome, CoveringWitness, Counterexample, Forgetful};
pub use error::GraphError;
pub use export::GraphJson;
pub use graph::{format_tags, parse_tags, BuildSpec, BuilderKind, Edge, HeckeGraph};
pub use monodromy::{Lift, LoopReport, Monodromy, Step, TypeIiCheck};
