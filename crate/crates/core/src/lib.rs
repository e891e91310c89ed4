//! Fixed-angle QAOA for MaxCut on regular graphs.
//!
//! The expectation value of the cut objective splits into one term per edge,
//! and each term depends only on the subgraph within depth-p reach of the
//! edge. This crate builds on that decomposition:
//!
//! - [`graph`]: graph model, graph6 ingestion, regular-graph generation,
//!   lightcone and worst-case tree subgraph extraction;
//! - [`statevec`]: dense statevector simulation, the exact oracle for small
//!   subgraphs;
//! - [`tensornet`]: bucket-elimination tensor contraction for subgraphs far
//!   beyond statevector reach;
//! - [`engine`]: whole-graph evaluation with subgraph deduplication and
//!   backend dispatch;
//! - [`optimize`]: RMSprop ascent with finite-difference gradients,
//!   multistart and schedule-interpolation initialization;
//! - [`classical`]: exact MaxCut and Goemans-Williamson baselines;
//! - [`angles`]: the fixed-angle registry and conjecture verification.

pub mod angles;
pub mod classical;
pub mod engine;
pub mod error;
pub mod graph;
pub mod optimize;
pub mod statevec;
pub mod tensornet;

pub use angles::{builtin_table, FixedAngleEntry, Registry};
pub use engine::{EvalReport, Evaluator};
pub use error::{Error, Result};
pub use graph::{
    edge_lightcone, encode_graph6, parse_graph6, random_regular, tree_subgraph, EdgeSubgraph,
    Graph, TreeSpec,
};
pub use statevec::{ExpectationResult, QaoaAngles};
