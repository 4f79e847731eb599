//! Finite fields, truncated local rings of the projective line over them,
//! products of those rings, and the matrix groups over them.

pub mod error;
pub mod field;
pub mod group;
pub mod jet;
pub mod level;
pub mod linalg;
pub mod mat2;
pub mod poly;

pub use error::RingError;
pub use field::{FieldCtx, Fq};
pub use group::{enumerate_group, group_order, p1_count, SubgroupSpec, SubgroupTag};
pub use jet::{Jet, JetRing, Point};
pub use level::{LevelRing, Mat2};
pub use mat2::M2;
pub use poly::Poly;
