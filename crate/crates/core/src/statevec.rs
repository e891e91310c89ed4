//! Dense statevector simulation of the alternating cost/mixer ansatz.
//!
//! The circuit needs only two gate kinds: a phase diagonal in the
//! computational basis (one factor e^{-i*gamma} per cut edge) and a uniform
//! single-qubit X rotation. Amplitudes live in one dense array of length 2^N,
//! so this backend is the exact oracle for anything that fits in memory.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default qubit cap: 2^24 amplitudes at 16 bytes each is 256 MiB.
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// The 2p variational parameters, in radians.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QaoaAngles {
    gamma: Vec<f64>,
    beta: Vec<f64>,
}

impl QaoaAngles {
    pub fn new(gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || gamma.len() != beta.len() {
            return Err(Error::InvalidInput(format!(
                "angle vectors must have equal nonzero length (gamma {}, beta {})",
                gamma.len(),
                beta.len()
            )));
        }
        if gamma.iter().chain(&beta).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("angles must be finite".into()));
        }
        Ok(QaoaAngles { gamma, beta })
    }

    /// Depth p.
    pub fn depth(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Packs as `[gamma..., beta...]` for generic optimizers.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gamma.iter().chain(&self.beta).copied().collect()
    }

    /// Inverse of [`QaoaAngles::to_flat`].
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if flat.is_empty() || flat.len() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "flat angle vector must have even nonzero length, got {}",
                flat.len()
            )));
        }
        let p = flat.len() / 2;
        QaoaAngles::new(flat[..p].to_vec(), flat[p..].to_vec())
    }

    /// Bit-exact digest for cache keys.
    pub fn digest(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for x in self.gamma.iter().chain(&self.beta) {
            x.to_bits().hash(&mut h);
        }
        h.finish()
    }
}

/// Expectation of the cut objective together with its per-edge split.
#[derive(Clone, Debug)]
pub struct ExpectationResult {
    /// F_p: expected number of cut edges.
    pub total: f64,
    /// One f_p value per edge, in the graph's canonical edge order.
    pub per_edge: Vec<f64>,
}

/// Evolves the state and returns F_p plus per-edge contributions.
pub fn simulate_expectation(g: &Graph, angles: &QaoaAngles) -> Result<ExpectationResult> {
    simulate_expectation_capped(g, angles, DEFAULT_QUBIT_CAP)
}

/// [`simulate_expectation`] with an explicit qubit cap.
pub fn simulate_expectation_capped(
    g: &Graph,
    angles: &QaoaAngles,
    qubit_cap: usize,
) -> Result<ExpectationResult> {
    let amps = evolve(g, angles, qubit_cap)?;
    let n = g.num_vertices();
    let masks: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(i, j)| (1u64 << i) | (1u64 << j))
        .collect();
    let mut per_edge = vec![0.0; masks.len()];
    for z in 0..1u64 << n {
        let w = amps[z as usize].norm_sqr();
        for (f, &mask) in per_edge.iter_mut().zip(&masks) {
            if (z & mask).count_ones() == 1 {
                *f += w;
            }
        }
    }
    let total = per_edge.iter().sum();
    Ok(ExpectationResult { total, per_edge })
}

/// f_p for a single edge: the probability that the edge is cut,
/// (1 - <Z_i Z_j>)/2. Identical to the matching entry of
/// [`simulate_expectation`].
pub fn edge_zz_expectation(g: &Graph, angles: &QaoaAngles, edge: (u32, u32)) -> Result<f64> {
    edge_zz_expectation_capped(g, angles, edge, DEFAULT_QUBIT_CAP)
}

/// [`edge_zz_expectation`] with an explicit qubit cap.
pub fn edge_zz_expectation_capped(
    g: &Graph,
    angles: &QaoaAngles,
    edge: (u32, u32),
    qubit_cap: usize,
) -> Result<f64> {
    if g.edge_index(edge.0, edge.1).is_none() {
        return Err(Error::EdgeNotFound(edge.0, edge.1));
    }
    let amps = evolve(g, angles, qubit_cap)?;
    let mask = (1u64 << edge.0) | (1u64 << edge.1);
    let mut f = 0.0;
    for (z, a) in amps.iter().enumerate() {
        if (z as u64 & mask).count_ones() == 1 {
            f += a.norm_sqr();
        }
    }
    Ok(f)
}

/// Cut counts for every basis state, filled by Gray-code single-flip updates.
fn cut_table(g: &Graph) -> Vec<u16> {
    let n = g.num_vertices();
    let mut counts = vec![0u16; 1 << n];
    let mut current: i32 = 0;
    let mut prev_gray = 0u64;
    for k in 1u64..1 << n {
        let gray = k ^ (k >> 1);
        let v = (gray ^ prev_gray).trailing_zeros();
        for &w in g.neighbors(v) {
            let same = ((prev_gray >> v) & 1) == ((prev_gray >> w) & 1);
            current += if same { 1 } else { -1 };
        }
        counts[gray as usize] = current as u16;
        prev_gray = gray;
    }
    counts
}

fn evolve(g: &Graph, angles: &QaoaAngles, qubit_cap: usize) -> Result<Vec<Complex64>> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    if n > qubit_cap.min(48) {
        return Err(Error::Capacity {
            what: "statevector qubits (use the tensor backend for larger subgraphs)".into(),
            requested: n as u64,
            limit: qubit_cap.min(48) as u64,
        });
    }
    let dim = 1usize << n;
    let cuts = cut_table(g);
    let amp0 = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let mut amps = vec![amp0; dim];

    for layer in 0..angles.depth() {
        // Cost phase: one e^{-i*gamma} factor per cut edge.
        let gamma = angles.gamma[layer];
        let phases: Vec<Complex64> = (0..=g.num_edges() as u32)
            .map(|c| Complex64::from_polar(1.0, -gamma * c as f64))
            .collect();
        for (a, &c) in amps.iter_mut().zip(&cuts) {
            *a *= phases[c as usize];
        }
        // Mixer: e^{-i*beta*X} on every qubit.
        let beta = angles.beta[layer];
        let (cos, sin) = (beta.cos(), beta.sin());
        let mi_sin = Complex64::new(0.0, -sin);
        for q in 0..n {
            let bit = 1usize << q;
            let mut base = 0;
            while base < dim {
                for z0 in base..base + bit {
                    let z1 = z0 | bit;
                    let (a0, a1) = (amps[z0], amps[z1]);
                    amps[z0] = cos * a0 + mi_sin * a1;
                    amps[z1] = cos * a1 + mi_sin * a0;
                }
                base += bit << 1;
            }
        }
    }
    Ok(amps)
}
