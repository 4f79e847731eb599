//! Rank-two bundles on the projective line with level structure: splitting
//! types of modifications, automorphism images and vertex enumeration.

pub mod aut;
pub mod divisor;
pub mod error;
pub mod local;
pub mod sections;
pub mod vertex;

pub use aut::aut_image;
pub use divisor::{parse_point, DivisorSpec};
pub use error::BundleError;
pub use local::{divisor_section, lift_value, local_value, point_section};
pub use sections::{splitting_type, LatticeCondition, ModFrame, ModifiedSheaf, SectionSpace};
pub use vertex::{fiber_count, orbit_representatives, Layer, Moduli, Vertex, XPosition};
