//! Construction of the bra/ket expectation network for a marked edge.

use num_complex::Complex64;

use super::{Tensor, TensorNetwork};
use crate::graph::EdgeSubgraph;
use crate::statevec::QaoaAngles;

/// Network construction switches.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Store cost gates as rank-2 phase tables attached to the current wire
    /// indices (the default). When false, cost gates become rank-4 tensors
    /// with explicit input and output indices; values are identical, only the
    /// network shape changes.
    pub diagonal_costs: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            diagonal_costs: true,
        }
    }
}

/// Builds the closed network whose full contraction is <Z_i Z_j> for the
/// subgraph's central edge at the given angles.
pub fn build_edge_network(sub: &EdgeSubgraph, angles: &QaoaAngles) -> TensorNetwork {
    build_edge_network_with(sub, angles, &BuildOptions::default())
}

/// [`build_edge_network`] with explicit options.
pub fn build_edge_network_with(
    sub: &EdgeSubgraph,
    angles: &QaoaAngles,
    opts: &BuildOptions,
) -> TensorNetwork {
    let g = sub.graph();
    let n = g.num_vertices();
    let p = angles.depth();
    let (obs_a, obs_b) = sub.central_endpoints();

    let mut next_index = 0u32;
    let mut alloc = || {
        let id = next_index;
        next_index += 1;
        id
    };
    let mut tensors = Vec::new();
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let one = Complex64::new(1.0, 0.0);

    // Ket layer: |+> caps, then alternating cost and mixer layers.
    let mut wire: Vec<u32> = (0..n).map(|_| alloc()).collect();
    for &w in &wire {
        tensors.push(Tensor::new(vec![w], vec![inv_sqrt2, inv_sqrt2]));
    }
    for layer in 0..p {
        let phase = Complex64::from_polar(1.0, -angles.gamma()[layer]);
        for &(a, b) in g.edges() {
            push_cost(
                &mut tensors,
                &mut wire,
                &mut alloc,
                (a as usize, b as usize),
                phase,
                opts.diagonal_costs,
            );
        }
        let beta = angles.beta()[layer];
        let (c, s) = (
            Complex64::new(beta.cos(), 0.0),
            Complex64::new(0.0, -beta.sin()),
        );
        for w in wire.iter_mut() {
            let out = alloc();
            tensors.push(Tensor::new(vec![*w, out], vec![c, s, s, c]));
            *w = out;
        }
    }
    let ket_top = wire;

    // Observables attach to the final ket wires, which the bra layer shares.
    tensors.push(Tensor::new(vec![ket_top[obs_a as usize]], vec![one, -one]));
    tensors.push(Tensor::new(vec![ket_top[obs_b as usize]], vec![one, -one]));

    // Bra layer: the conjugate circuit, its top wires identified with the ket's.
    let mut wire: Vec<u32> = (0..n).map(|_| alloc()).collect();
    for &w in &wire {
        tensors.push(Tensor::new(vec![w], vec![inv_sqrt2, inv_sqrt2]));
    }
    for layer in 0..p {
        let phase = Complex64::from_polar(1.0, angles.gamma()[layer]);
        for &(a, b) in g.edges() {
            push_cost(
                &mut tensors,
                &mut wire,
                &mut alloc,
                (a as usize, b as usize),
                phase,
                opts.diagonal_costs,
            );
        }
        let beta = angles.beta()[layer];
        let (c, s) = (
            Complex64::new(beta.cos(), 0.0),
            Complex64::new(0.0, beta.sin()),
        );
        let last = layer + 1 == p;
        for (q, w) in wire.iter_mut().enumerate() {
            let out = if last { ket_top[q] } else { alloc() };
            tensors.push(Tensor::new(vec![*w, out], vec![c, s, s, c]));
            *w = out;
        }
    }

    TensorNetwork {
        tensors,
        index_count: next_index,
    }
}

fn push_cost(
    tensors: &mut Vec<Tensor>,
    wire: &mut [u32],
    alloc: &mut impl FnMut() -> u32,
    (a, b): (usize, usize),
    phase: Complex64,
    diagonal: bool,
) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if diagonal {
        tensors.push(Tensor::new(
            vec![wire[a], wire[b]],
            vec![one, phase, phase, one],
        ));
    } else {
        // Explicit rank-4 form: value(phase table) * delta(in, out) per qubit.
        let (oa, ob) = (alloc(), alloc());
        let mut data = vec![zero; 16];
        for sa in 0..2usize {
            for sb in 0..2usize {
                let v = if sa == sb { one } else { phase };
                data[((sa * 2 + sb) * 2 + sa) * 2 + sb] = v;
            }
        }
        tensors.push(Tensor::new(vec![wire[a], wire[b], oa, ob], data));
        wire[a] = oa;
        wire[b] = ob;
    }
}
