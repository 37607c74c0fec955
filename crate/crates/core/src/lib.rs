//! Chains of cycles through a king of a strong tournament.
//!
//! For a strong tournament on `n >= 3` vertices and any king `k`,
//! [`chain::build_chain`] produces cycles `C_3, ..., C_n`, where each cycle
//! arises from the previous one by replacing one arc `x -> y` with
//! `x -> z -> y`, and `k` is a king of the subtournament induced by every
//! cycle. [`oracle`] checks such chains from first principles.

pub mod analysis;
pub mod certificate;
pub mod chain;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod oracle;
pub mod tournament;

pub use error::{Error, Result};
pub use tournament::{Tournament, VertexId};
