//! Powers of Hamiltonian cycles in uniformly dense, inseparable graphs.
//!
//! The crate turns the absorption method into runnable algorithms: checkers
//! for the structural hypotheses, the clique-hypergraph path cover, the
//! connecting and absorbing constructions, and the end-to-end pipeline that
//! emits a verified cyclic ordering whose every `k + 1` consecutive vertices
//! form a clique. Brute-force oracles cover every stage at small sizes.

pub mod absorber;
pub mod bitset;
pub mod connector;
pub mod constants;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hamiltonian;
pub mod kpath;
pub mod pathcover;
pub mod properties;
pub mod ratio;
pub mod rng;
pub mod walks;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, OrderedClique};
pub use ratio::Ratio;
pub use rng::SplitMix64;
