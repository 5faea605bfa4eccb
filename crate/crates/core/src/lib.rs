//! Sylow 2-subgroups of symmetric and alternating groups realized as
//! automorphism groups of binary rooted trees, together with the group
//! machinery needed to verify their orders, decompositions and minimal
//! generating sets.

pub mod classify;
pub mod cli;
pub mod engine;
pub mod error;
pub mod perm;
pub mod portrait;
pub mod sylow;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use portrait::{Portrait, VertexAddress};
