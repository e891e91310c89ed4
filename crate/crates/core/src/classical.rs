//! Classical baselines: exact MaxCut by Gray-code enumeration and the
//! Goemans-Williamson relaxation via a low-rank factorization with
//! hyperplane rounding, plus the ratio arithmetic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The hyperplane-rounding guarantee of the Goemans-Williamson algorithm.
pub const GW_GUARANTEE: f64 = 0.8786;

/// Default vertex cap for exhaustive MaxCut.
pub const DEFAULT_MAXCUT_CAP: usize = 28;

/// Default number of restarts for the low-rank relaxation solver.
pub const GW_RESTARTS: usize = 50;

/// Exact MaxCut outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxCutResult {
    /// C_max.
    pub value: u64,
    /// A maximizing bipartition, bit v = side of vertex v.
    pub witness: u64,
    /// True for the exact solver (always, here).
    pub optimal: bool,
}

/// Exhaustive MaxCut over all bipartitions with vertex 0's side fixed.
///
/// Gray-code enumeration flips one vertex per step, updating the cut value in
/// O(degree) instead of O(M).
pub fn maxcut_exact(g: &Graph) -> Result<MaxCutResult> {
    maxcut_exact_capped(g, DEFAULT_MAXCUT_CAP)
}

/// [`maxcut_exact`] with an explicit vertex cap.
pub fn maxcut_exact_capped(g: &Graph, cap: usize) -> Result<MaxCutResult> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    if n > cap.min(63) {
        return Err(Error::Capacity {
            what: "exhaustive MaxCut vertices (report cut fractions or GW-relative ratios instead)"
                .into(),
            requested: n as u64,
            limit: cap.min(63) as u64,
        });
    }
    let mut best_value = 0u64;
    let mut best_witness = 0u64;
    let mut current: i64 = 0;
    let mut mask = 0u64;
    // Vertex 0 stays on side 0: complementary bipartitions cut identically.
    for k in 1u64..1 << (n - 1) {
        let gray = k ^ (k >> 1);
        let v = (gray ^ (mask >> 1)).trailing_zeros() + 1;
        for &w in g.neighbors(v) {
            let same = ((mask >> v) & 1) == ((mask >> w) & 1);
            current += if same { 1 } else { -1 };
        }
        mask = gray << 1;
        if current as u64 > best_value {
            best_value = current as u64;
            best_witness = mask;
        }
    }
    Ok(MaxCutResult {
        value: best_value,
        witness: best_witness,
        optimal: true,
    })
}

/// Relaxation embedding plus rounding statistics.
#[derive(Clone, Debug)]
pub struct GwResult {
    /// The relaxation objective at the returned embedding.
    pub relaxation_value: f64,
    /// One unit vector per vertex (row-major, n x rank).
    pub embedding: Vec<Vec<f64>>,
    /// Cut sizes of the rounded samples (empty until [`gw_round`]).
    pub cut_samples: Vec<u64>,
    /// Mean of `cut_samples`, `None` until rounded.
    pub average_cut: Option<f64>,
    /// False when the solver hit its sweep budget before the objective
    /// stabilized.
    pub converged: bool,
}

/// Maximizes sum over edges of (1 - v_i . v_j)/2 over unit vectors in R^rank
/// by row-normalized gradient ascent (Gauss-Seidel sweeps) from seeded random
/// starts, keeping the best of [`GW_RESTARTS`] restarts.
///
/// With rank at least ceil(sqrt(2N)) the factorized problem has no spurious
/// local maxima in practice; `rank = 0` selects max(3, ceil(sqrt(2N))).
pub fn gw_solve(g: &Graph, rank: usize, iters: usize, seed: u64) -> Result<GwResult> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let rank = if rank == 0 {
        ((2.0 * n as f64).sqrt().ceil() as usize).max(3)
    } else if rank < 2 {
        return Err(Error::InvalidInput("embedding rank must be >= 2".into()));
    } else {
        rank
    };

    let mut best: Option<GwResult> = None;
    for restart in 0..GW_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, restart as u64));
        let mut vectors: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let mut v: Vec<f64> = (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect();
                normalize(&mut v);
                v
            })
            .collect();

        let mut prev = objective(g, &vectors);
        let mut converged = false;
        for _ in 0..iters {
            // Exact coordinate maximization: the objective is linear in each
            // row, so v_i = -normalize(sum of neighbor rows) is the row
            // optimum; sweeping rows is monotone.
            for v in 0..n as u32 {
                let mut s = vec![0.0; rank];
                for &w in g.neighbors(v) {
                    for (acc, x) in s.iter_mut().zip(&vectors[w as usize]) {
                        *acc += x;
                    }
                }
                let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-30 {
                    for (slot, x) in vectors[v as usize].iter_mut().zip(&s) {
                        *slot = -x / norm;
                    }
                }
            }
            let value = objective(g, &vectors);
            if (value - prev).abs() < 1e-12 {
                converged = true;
                break;
            }
            prev = value;
        }

        let value = objective(g, &vectors);
        if best.as_ref().map_or(true, |b| value > b.relaxation_value) {
            best = Some(GwResult {
                relaxation_value: value,
                embedding: vectors,
                cut_samples: Vec::new(),
                average_cut: None,
                converged,
            });
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Rounds the embedding with `n_samples` random hyperplanes: a Gaussian
/// normal is drawn and each vertex takes the sign of its projection.
pub fn gw_round(g: &Graph, res: &GwResult, n_samples: usize, seed: u64) -> Result<GwResult> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("need at least one rounding sample".into()));
    }
    if res.embedding.len() != g.num_vertices() {
        return Err(Error::InvalidInput(format!(
            "embedding has {} rows for a graph on {} vertices",
            res.embedding.len(),
            g.num_vertices()
        )));
    }
    let rank = res.embedding[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let normal: Vec<f64> = (0..rank).map(|_| gaussian(&mut rng)).collect();
        let mut mask = 0u64;
        for (v, row) in res.embedding.iter().enumerate() {
            let dot: f64 = row.iter().zip(&normal).map(|(a, b)| a * b).sum();
            if dot >= 0.0 {
                mask |= 1 << v;
            }
        }
        samples.push(g.cut_size(mask));
    }
    let average = samples.iter().sum::<u64>() as f64 / samples.len() as f64;
    Ok(GwResult {
        cut_samples: samples,
        average_cut: Some(average),
        ..res.clone()
    })
}

/// C_p = F / C_max.
pub fn approximation_ratio(f: f64, cmax: u64) -> Result<f64> {
    if cmax == 0 {
        return Err(Error::DivisionByZero("cmax"));
    }
    Ok(f / cmax as f64)
}

/// B_p = F / <C_classical>; above 1 means per-graph advantage.
pub fn performance_ratio(f: f64, avg_classical: f64) -> Result<f64> {
    if avg_classical <= 0.0 {
        return Err(Error::DivisionByZero("average classical cut"));
    }
    Ok(f / avg_classical)
}

fn objective(g: &Graph, vectors: &[Vec<f64>]) -> f64 {
    g.edges()
        .iter()
        .map(|&(i, j)| {
            let dot: f64 = vectors[i as usize]
                .iter()
                .zip(&vectors[j as usize])
                .map(|(a, b)| a * b)
                .sum();
            (1.0 - dot) / 2.0
        })
        .sum()
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 1e-30 {
        v.iter_mut().for_each(|x| *x /= norm);
    } else {
        v[0] = 1.0;
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller; one value per draw keeps the stream simple.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Stable per-task seed derivation (splitmix64 over seed xor task).
pub(crate) fn derive_seed(seed: u64, task: u64) -> u64 {
    let mut z = seed ^ task.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
