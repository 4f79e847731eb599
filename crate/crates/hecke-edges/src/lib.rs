//! Hecke modifications at a point: coset decompositions, the exhaustive
//! edge builder, the symbolic cusp rule and the rank-`n` cusp moves.

pub mod coset;
pub mod edges;
pub mod error;
pub mod pgln;

pub use coset::{coset_reps, CosetLabel, CosetRep};
pub use edges::{EdgeBundle, EdgeTag, HeckeAt};
pub use error::EdgeError;
pub use pgln::{pgln_moves, q_binomial, q_binomial_by_subsets};
