//! The end-to-end search for `k`-th powers of Hamiltonian cycles, its
//! verifier, an exhaustive oracle for small graphs, and the variant that
//! forces cliques inside prescribed vertex sets.
//!
//! The pipeline runs five stages in a fixed order: an absorbing path, a
//! random reservoir, a cover of the rest by `k`-paths, cyclic connection
//! of all paths through the reservoir, and absorption of every vertex left
//! over. Each stage draws from its own seeded stream, so a configuration
//! and a graph determine the outcome.

mod certificate;
mod hitting;
mod oracle;
mod pipeline;

pub use certificate::{extract_factor, verify, Certificate, Verdict};
pub use hitting::{find_with_hitting_sets, window_tallies, HittingOutcome};
pub use oracle::{brute_force_oracle, ORACLE_LIMIT};
pub use pipeline::{
    find_hamiltonian_power, AbsorbStage, AbsorbingStage, ConnectStage, ConstantsMode, CoverStage,
    PipelineConfig, PipelineOutcome, ReservoirStage, StageReport, DEFAULT_SEED, STAGES,
};
