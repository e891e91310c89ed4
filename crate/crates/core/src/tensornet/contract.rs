//! Bucket-elimination contraction.

use num_complex::Complex64;

use super::{ContractLimits, ContractionOrder, Tensor, TensorNetwork};
use crate::error::{Error, Result};

/// One elimination step of a contraction, for debug traces and width
/// regression tracking.
#[derive(Clone, Copy, Debug)]
pub struct StepTrace {
    pub index: u32,
    pub bucket_tensors: usize,
    pub produced_rank: u32,
}

/// Renders a trace as text, one elimination step per line.
pub fn format_trace(trace: &[StepTrace]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let width = trace.iter().map(|s| s.produced_rank).max().unwrap_or(0);
    for s in trace {
        writeln!(
            out,
            "eliminate {:>6}  bucket {:>3}  rank {:>2}",
            s.index, s.bucket_tensors, s.produced_rank
        )
        .unwrap();
    }
    writeln!(out, "max rank {width}").unwrap();
    out
}

/// Contracts the network along `order`, returning the (real) scalar value.
///
/// For each index in sequence, every live tensor containing it is multiplied
/// together and the index is summed out. The imaginary part of the final
/// scalar must vanish to 1e-9 (the network encodes a Hermitian expectation).
pub fn contract(
    net: &TensorNetwork,
    order: &ContractionOrder,
    limits: &ContractLimits,
) -> Result<f64> {
    contract_impl(net, order, limits, None).map(|(v, _)| v)
}

/// [`contract`] that also returns the per-step trace.
pub fn contract_traced(
    net: &TensorNetwork,
    order: &ContractionOrder,
    limits: &ContractLimits,
) -> Result<(f64, Vec<StepTrace>)> {
    let mut trace = Vec::with_capacity(order.sequence.len());
    let (v, _) = contract_impl(net, order, limits, Some(&mut trace))?;
    Ok((v, trace))
}

fn contract_impl(
    net: &TensorNetwork,
    order: &ContractionOrder,
    limits: &ContractLimits,
    mut trace: Option<&mut Vec<StepTrace>>,
) -> Result<(f64, u32)> {
    let n = net.index_count as usize;
    {
        let mut seen = vec![false; n];
        for &i in &order.sequence {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidInput(format!(
                    "contraction order does not cover the network (index {i})"
                )));
            }
            seen[i as usize] = true;
        }
        if order.sequence.len() != n {
            return Err(Error::InvalidInput(format!(
                "contraction order covers {} of {} indices",
                order.sequence.len(),
                n
            )));
        }
    }

    // Membership lists: which live tensors contain each index. Rank-0
    // tensors fold straight into the scalar accumulator.
    let mut slots: Vec<Option<Tensor>> = net.tensors.iter().cloned().map(Some).collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut scalar = Complex64::new(1.0, 0.0);
    for (slot, entry) in slots.iter_mut().enumerate() {
        let t = entry.as_ref().unwrap();
        if t.indices.is_empty() {
            scalar *= t.data[0];
            *entry = None;
        } else {
            for &i in &t.indices {
                containing[i as usize].push(slot);
            }
        }
    }

    let mut max_rank = 0u32;
    for &idx in &order.sequence {
        let bucket: Vec<usize> = containing[idx as usize]
            .iter()
            .copied()
            .filter(|&s| slots[s].is_some())
            .collect();
        if bucket.is_empty() {
            continue;
        }

        // Union of participating indices, the eliminated one excluded.
        let mut union: Vec<u32> = Vec::new();
        for &s in &bucket {
            for &i in &slots[s].as_ref().unwrap().indices {
                if i != idx && !union.contains(&i) {
                    union.push(i);
                }
            }
        }
        union.sort_unstable();
        let rank = union.len() as u32;
        if rank > limits.max_rank || (1u64 << rank) > limits.max_table_entries {
            return Err(Error::Capacity {
                what: format!("contraction intermediary at index {idx}"),
                requested: rank as u64,
                limit: limits.max_rank.min(limits.max_table_entries.ilog2()) as u64,
            });
        }
        max_rank = max_rank.max(rank);
        if let Some(t) = trace.as_deref_mut() {
            t.push(StepTrace {
                index: idx,
                bucket_tensors: bucket.len(),
                produced_rank: rank,
            });
        }

        // Per-tensor bit weights for each union position, plus the weight of
        // the summed index.
        let tensors: Vec<&Tensor> = bucket.iter().map(|&s| slots[s].as_ref().unwrap()).collect();
        let mut weights: Vec<Vec<u64>> = Vec::with_capacity(tensors.len());
        let mut sum_weight: Vec<u64> = Vec::with_capacity(tensors.len());
        for t in &tensors {
            let r = t.rank();
            let pos_weight = |needle: u32| -> u64 {
                t.indices
                    .iter()
                    .position(|&i| i == needle)
                    .map_or(0, |pos| 1u64 << (r - 1 - pos))
            };
            weights.push(union.iter().map(|&u| pos_weight(u)).collect());
            sum_weight.push(pos_weight(idx));
        }

        let out_len = 1usize << rank;
        let mut data = vec![Complex64::new(0.0, 0.0); out_len];
        let mut bases = vec![0u64; tensors.len()];
        for (a, out) in data.iter_mut().enumerate() {
            bases.fill(0);
            for u_pos in 0..union.len() {
                if (a >> (union.len() - 1 - u_pos)) & 1 == 1 {
                    for (b, w) in bases.iter_mut().zip(&weights) {
                        *b += w[u_pos];
                    }
                }
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..2u64 {
                let mut prod = Complex64::new(1.0, 0.0);
                for (t, (&b, &sw)) in tensors.iter().zip(bases.iter().zip(&sum_weight)) {
                    prod *= t.data[(b + x * sw) as usize];
                }
                acc += prod;
            }
            *out = acc;
        }

        for &s in &bucket {
            slots[s] = None;
        }
        if union.is_empty() {
            scalar *= data[0];
        } else {
            let slot = slots.len();
            for &i in &union {
                containing[i as usize].push(slot);
            }
            slots.push(Some(Tensor::new(union, data)));
        }
    }

    if let Some(t) = slots.iter().flatten().next() {
        return Err(Error::Internal(format!(
            "tensor with indices {:?} left after elimination",
            t.indices
        )));
    }
    if scalar.im.abs() > 1e-9 {
        return Err(Error::Internal(format!(
            "contraction of a Hermitian expectation returned imaginary part {:.3e}",
            scalar.im
        )));
    }
    Ok((scalar.re, max_rank))
}
