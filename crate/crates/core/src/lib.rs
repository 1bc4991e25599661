//! Lattice blocks and independent-subcontext decompositions of
//! multi-adjoint fuzzy formal contexts.

pub mod blocks;
pub mod bridge;
pub mod cli;
pub mod concepts;
pub mod context;
pub mod lattice;
pub mod oracle;
mod partitions;
pub mod residuation;
