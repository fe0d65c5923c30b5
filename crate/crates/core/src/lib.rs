//! Judicious 3-partitioning of 3-uniform hypergraphs.
//!
//! The crate has two halves. The partitioning pipeline splits vertices into
//! high- and low-degree classes, partitions the high vertices by local search
//! on the induced multigraph, solves for per-part placement probabilities and
//! places the low vertices at random ([`pipeline::partition`]). The
//! verification half ([`verify`]) re-certifies, by exact box subdivision, the
//! inequality cases that guarantee those probabilities always exist.

pub mod assign;
pub mod cli;
pub mod exact;
pub mod highlow;
pub mod hypergraph;
pub mod lemma_solve;
pub mod pipeline;
pub mod verify;

pub use assign::{ConcentrationParams, FullPartition};
pub use highlow::{HighLowSplit, HighMultigraph, HighPartition};
pub use hypergraph::{DegreeTable, Hypergraph, HypergraphError};
pub use lemma_solve::{EdgeProfile, LemmaError, LemmaInstance, QTriple};
pub use pipeline::{partition, PartitionConfig, PartitionOutcome, PipelineError};

/// Name of the pseudo-random generator used for every seeded draw.
pub const RNG_NAME: &str = "SplitMix64";
