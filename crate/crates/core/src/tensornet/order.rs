//! Greedy elimination ordering over the index co-occurrence graph.
//!
//! Two indices are adjacent when they appear in a common tensor. Eliminating
//! an index merges every tensor containing it, so its live neighborhood
//! becomes a clique; the produced tensor's rank equals the neighborhood size
//! at elimination time. The maximum of that quantity over the sequence is the
//! width the order realizes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ContractionOrder, OrderStrategy, TensorNetwork};

/// Orders all indices of `net` by the chosen greedy heuristic.
///
/// Ties are broken by a seeded random priority so different seeds explore
/// different orders deterministically.
pub fn find_order(net: &TensorNetwork, strategy: OrderStrategy, seed: u64) -> ContractionOrder {
    let n = net.index_count() as usize;
    let mut adj: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    for t in &net.tensors {
        for (pos, &i) in t.indices.iter().enumerate() {
            for &j in &t.indices[pos + 1..] {
                if i != j {
                    adj[i as usize].insert(j);
                    adj[j as usize].insert(i);
                }
            }
        }
    }

    let mut priority: Vec<u32> = (0..n as u32).collect();
    priority.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let fill_count = |adj: &[std::collections::BTreeSet<u32>], v: usize| -> usize {
        let nbrs: Vec<u32> = adj[v].iter().copied().collect();
        let mut fill = 0;
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !adj[x as usize].contains(&y) {
                    fill += 1;
                }
            }
        }
        fill
    };

    let mut alive: Vec<bool> = vec![true; n];
    let mut sequence = Vec::with_capacity(n);
    let mut width = 0u32;
    for _ in 0..n {
        let mut best: Option<(usize, u32, usize)> = None; // (score, priority, vertex)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let score = match strategy {
                OrderStrategy::GreedyDegree => adj[v].len(),
                OrderStrategy::GreedyFill => fill_count(&adj, v),
            };
            let key = (score, priority[v], v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.expect("an alive index remains");
        let nbrs: Vec<u32> = adj[v].iter().copied().collect();
        width = width.max(nbrs.len() as u32);
        for (i, &x) in nbrs.iter().enumerate() {
            adj[x as usize].remove(&(v as u32));
            for &y in &nbrs[i + 1..] {
                adj[x as usize].insert(y);
                adj[y as usize].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        sequence.push(v as u32);
    }

    ContractionOrder { sequence, width }
}
