//! Tensor-network backend for single-edge expectation values.
//!
//! The double-layer (bra/ket) network for <ZZ> on a subgraph's central edge
//! exploits the circuit's structure: cost gates are diagonal, so they attach
//! as rank-2 tables to the current wire indices without advancing them; only
//! the mixer rotations introduce new indices. Contraction is bucket
//! elimination along a greedy index order.

mod build;
mod contract;
mod order;

pub use build::{build_edge_network, build_edge_network_with, BuildOptions};
pub use contract::{contract, contract_traced, format_trace, StepTrace};
pub use order::find_order;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::EdgeSubgraph;
use crate::statevec::QaoaAngles;

/// A dense tensor over binary indices. `data` is row-major with the first
/// listed index most significant; `data.len() == 2^indices.len()`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub indices: Vec<u32>,
    pub data: Vec<Complex64>,
}

impl Tensor {
    pub fn new(indices: Vec<u32>, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), 1 << indices.len());
        Tensor { indices, data }
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }
}

/// A closed tensor expression (no open indices); contracting it fully yields
/// a scalar.
#[derive(Clone, Debug)]
pub struct TensorNetwork {
    pub tensors: Vec<Tensor>,
    pub index_count: u32,
}

impl TensorNetwork {
    /// Total number of distinct binary indices.
    pub fn index_count(&self) -> u32 {
        self.index_count
    }
}

/// An elimination sequence plus the width the sequence realizes (the maximum
/// rank of any intermediary tensor produced while executing it).
#[derive(Clone, Debug)]
pub struct ContractionOrder {
    pub sequence: Vec<u32>,
    pub width: u32,
}

/// Greedy elimination heuristics over the index co-occurrence graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderStrategy {
    /// Eliminate the index with the fewest co-occurring live indices.
    GreedyDegree,
    /// Eliminate the index whose elimination adds the fewest fill edges.
    GreedyFill,
}

/// Caps on contraction intermediaries.
#[derive(Clone, Copy, Debug)]
pub struct ContractLimits {
    /// Maximum rank of any intermediary tensor.
    pub max_rank: u32,
    /// Maximum number of entries in any intermediary table.
    pub max_table_entries: u64,
}

impl Default for ContractLimits {
    fn default() -> Self {
        ContractLimits {
            max_rank: 30,
            max_table_entries: 1 << 30,
        }
    }
}

/// Picks the better of the two greedy orders for a network.
pub fn best_order(net: &TensorNetwork, seed: u64) -> ContractionOrder {
    let fill = find_order(net, OrderStrategy::GreedyFill, seed);
    let degree = find_order(net, OrderStrategy::GreedyDegree, seed);
    if degree.width < fill.width {
        degree
    } else {
        fill
    }
}

/// Maps a contracted <ZZ> value to the cut probability f = (1 - <ZZ>)/2,
/// enforcing the [0, 1] range within a small numerical slack.
pub(crate) fn zz_to_cut_probability(zz: f64) -> Result<f64> {
    let f = (1.0 - zz) / 2.0;
    if !(-1e-9..=1.0 + 1e-9).contains(&f) {
        return Err(Error::Internal(format!(
            "edge expectation {f} outside [0, 1]"
        )));
    }
    Ok(f.clamp(0.0, 1.0))
}

/// Convenience composition: build the network for the subgraph's central
/// edge, pick a contraction order, contract, and map to the cut probability.
pub fn edge_expectation_tn(sub: &EdgeSubgraph, angles: &QaoaAngles) -> Result<f64> {
    edge_expectation_tn_with(sub, angles, &ContractLimits::default())
}

/// [`edge_expectation_tn`] with explicit contraction limits.
pub fn edge_expectation_tn_with(
    sub: &EdgeSubgraph,
    angles: &QaoaAngles,
    limits: &ContractLimits,
) -> Result<f64> {
    let net = build_edge_network(sub, angles);
    let order = best_order(&net, 0);
    let zz = contract(&net, &order, limits)?;
    zz_to_cut_probability(zz)
}

/// Repeated evaluation of one subgraph at many angle settings. The network
/// structure depends only on (subgraph, p), so the contraction order is
/// computed once per depth and reused across angle values.
pub struct EdgeTnEvaluator {
    sub: EdgeSubgraph,
    limits: ContractLimits,
    orders: std::sync::Mutex<std::collections::HashMap<usize, ContractionOrder>>,
}

impl EdgeTnEvaluator {
    pub fn new(sub: EdgeSubgraph) -> Self {
        EdgeTnEvaluator {
            sub,
            limits: ContractLimits::default(),
            orders: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }

    pub fn with_limits(mut self, limits: ContractLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn subgraph(&self) -> &EdgeSubgraph {
        &self.sub
    }

    /// f for the central edge at the given angles.
    pub fn evaluate(&self, angles: &QaoaAngles) -> Result<f64> {
        let net = build_edge_network(&self.sub, angles);
        let order = {
            let mut cached = self.orders.lock().unwrap();
            cached
                .entry(angles.depth())
                .or_insert_with(|| best_order(&net, 0))
                .clone()
        };
        let zz = contract(&net, &order, &self.limits)?;
        zz_to_cut_probability(zz)
    }
}
