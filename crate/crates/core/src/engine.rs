//! Whole-graph expectation evaluation by lightcone decomposition.
//!
//! Each edge's contribution is computed on its own lightcone subgraph.
//! Subgraphs are deduplicated by a canonical key, each distinct class is
//! evaluated once (statevector below the qubit cap, tensor contraction
//! above), and per-edge values are summed in canonical edge order so reports
//! are bit-identical across runs.

use dashmap::DashMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{edge_lightcone, tree_subgraph, EdgeSubgraph, Graph, TreeSpec};
use crate::statevec::{self, QaoaAngles};
use crate::tensornet::{self, ContractLimits};

/// Dedup key for lightcone classes.
///
/// Acyclic subgraphs are keyed by a canonical rooted-tree encoding (rooted at
/// the central edge), so isomorphic trees always collide. Cyclic subgraphs
/// fall back to their BFS-relabeled edge list: conservative, but a missed
/// collision only costs a repeated evaluation, never correctness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalKey(Vec<u8>);

pub fn canonical_key(sub: &EdgeSubgraph) -> CanonicalKey {
    let g = sub.graph();
    if g.girth().is_none() {
        let (a, b) = sub.central_endpoints();
        let left = ahu_encode(g, a, b);
        let right = ahu_encode(g, b, a);
        let (first, second) = if left <= right {
            (left, right)
        } else {
            (right, left)
        };
        let mut bytes = vec![b'T'];
        bytes.extend_from_slice(&first);
        bytes.extend_from_slice(&second);
        CanonicalKey(bytes)
    } else {
        let mut bytes = vec![b'G'];
        bytes.extend_from_slice(&(g.num_vertices() as u32).to_le_bytes());
        bytes.extend_from_slice(&(sub.central_edge() as u32).to_le_bytes());
        for &(i, j) in g.edges() {
            bytes.extend_from_slice(&i.to_le_bytes());
            bytes.extend_from_slice(&j.to_le_bytes());
        }
        CanonicalKey(bytes)
    }
}

/// Canonical encoding of the subtree hanging off `root`, entered from
/// `parent`: "(" + sorted child encodings + ")".
fn ahu_encode(g: &Graph, root: u32, parent: u32) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(root)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu_encode(g, w, root))
        .collect();
    children.sort();
    let mut out = vec![b'('];
    for c in children {
        out.extend_from_slice(&c);
    }
    out.push(b')');
    out
}

/// Which backend evaluated a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum BackendKind {
    Statevector,
    Tensor,
}

/// Backend selection for [`Evaluator::evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendChoice {
    /// Statevector when the class fits the qubit cap, tensor otherwise.
    Auto,
    Statevector,
    Tensor,
}

/// One evaluated lightcone class.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClassReport {
    pub vertices: usize,
    pub multiplicity: usize,
    pub backend: BackendKind,
}

/// Whole-graph evaluation result.
#[derive(Clone, Debug)]
pub struct EvalReport {
    /// F_p: expected number of cut edges.
    pub total_expectation: f64,
    /// F_p / M.
    pub cut_fraction: f64,
    /// F_p / C_max, when the exact MaxCut value was supplied.
    pub approximation_ratio: Option<f64>,
    /// Per-edge f values in canonical edge order.
    pub per_edge: Vec<f64>,
    /// Number of distinct lightcone classes evaluated.
    pub subgraph_classes: usize,
    /// Per-class evaluation metadata, in first-occurrence order.
    pub backend_used: Vec<ClassReport>,
}

/// Evaluation switches beyond the backend choice.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub backend: BackendChoice,
    /// Evaluate one representative per canonical class (default). Disabling
    /// recomputes every edge independently, bypassing the cache.
    pub dedup: bool,
    /// For regular graphs with girth > 2p+1 every lightcone is the full
    /// double tree, so the whole evaluation collapses to M * f_tree.
    pub tree_shortcut: bool,
    pub cmax: Option<u64>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            backend: BackendChoice::Auto,
            dedup: true,
            tree_shortcut: true,
            cmax: None,
        }
    }
}

#[derive(Clone, Copy)]
struct ClassValue {
    f: f64,
    vertices: usize,
    backend: BackendKind,
}

/// Evaluator with an in-memory class cache, shared across graphs (ensembles
/// reuse few classes heavily). Safe for concurrent use.
pub struct Evaluator {
    statevec_cap: usize,
    limits: ContractLimits,
    cache: DashMap<(CanonicalKey, u64), ClassValue>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            statevec_cap: statevec::DEFAULT_QUBIT_CAP,
            limits: ContractLimits::default(),
            cache: DashMap::new(),
        }
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_statevec_cap(mut self, cap: usize) -> Self {
        self.statevec_cap = cap;
        self
    }

    pub fn with_limits(mut self, limits: ContractLimits) -> Self {
        self.limits = limits;
        self
    }

    /// Number of cached class values.
    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Evaluates F_p by lightcone decomposition.
    pub fn evaluate(
        &self,
        g: &Graph,
        angles: &QaoaAngles,
        backend: BackendChoice,
        cmax: Option<u64>,
    ) -> Result<EvalReport> {
        self.evaluate_with(
            g,
            angles,
            &EvalOptions {
                backend,
                cmax,
                ..EvalOptions::default()
            },
        )
    }

    /// [`Evaluator::evaluate`] with full option control.
    pub fn evaluate_with(
        &self,
        g: &Graph,
        angles: &QaoaAngles,
        opts: &EvalOptions,
    ) -> Result<EvalReport> {
        if g.num_edges() == 0 {
            return Err(Error::InvalidGraph("graph has no edges".into()));
        }
        if opts.cmax == Some(0) {
            return Err(Error::DivisionByZero("cmax must be positive"));
        }
        let p = angles.depth() as u32;
        let m = g.num_edges();

        // Shortcut: high girth makes every lightcone the full double tree.
        if opts.tree_shortcut && opts.dedup {
            if let Some(d) = g.regular_degree() {
                let girth_ok = g.girth().map_or(true, |girth| girth > (2 * p + 1) as usize);
                if d >= 3 && girth_ok {
                    let tree = tree_subgraph(TreeSpec::new(d as u32, p)?)?;
                    let value = self.class_value(&tree, angles, opts.backend, true)?;
                    return Ok(self.assemble(vec![(value, (0..m).collect())], m, opts.cmax));
                }
            }
        }

        // Group edges by canonical lightcone class.
        let mut classes: Vec<(EdgeSubgraph, Vec<usize>)> = Vec::new();
        if opts.dedup {
            let mut index: std::collections::HashMap<CanonicalKey, usize> =
                std::collections::HashMap::new();
            for (e, &edge) in g.edges().iter().enumerate() {
                let sub = edge_lightcone(g, edge, p)?;
                let key = canonical_key(&sub);
                match index.entry(key) {
                    std::collections::hash_map::Entry::Occupied(slot) => {
                        classes[*slot.get()].1.push(e);
                    }
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(classes.len());
                        classes.push((sub, vec![e]));
                    }
                }
            }
        } else {
            for (e, &edge) in g.edges().iter().enumerate() {
                classes.push((edge_lightcone(g, edge, p)?, vec![e]));
            }
        }

        let evaluated: Result<Vec<(ClassValue, Vec<usize>)>> = classes
            .into_par_iter()
            .map(|(sub, edges)| {
                let value = self.class_value(&sub, angles, opts.backend, opts.dedup)?;
                Ok((value, edges))
            })
            .collect();
        Ok(self.assemble(evaluated?, m, opts.cmax))
    }

    fn assemble(
        &self,
        classes: Vec<(ClassValue, Vec<usize>)>,
        m: usize,
        cmax: Option<u64>,
    ) -> EvalReport {
        let mut per_edge = vec![0.0; m];
        let mut backend_used = Vec::with_capacity(classes.len());
        for (value, edges) in &classes {
            for &e in edges {
                per_edge[e] = value.f;
            }
            backend_used.push(ClassReport {
                vertices: value.vertices,
                multiplicity: edges.len(),
                backend: value.backend,
            });
        }
        let total: f64 = per_edge.iter().sum();
        EvalReport {
            total_expectation: total,
            cut_fraction: total / m as f64,
            approximation_ratio: cmax.map(|c| total / c as f64),
            per_edge,
            subgraph_classes: classes.len(),
            backend_used,
        }
    }

    fn class_value(
        &self,
        sub: &EdgeSubgraph,
        angles: &QaoaAngles,
        backend: BackendChoice,
        use_cache: bool,
    ) -> Result<ClassValue> {
        let n = sub.graph().num_vertices();
        let key = if use_cache {
            let key = (canonical_key(sub), angles.digest());
            if let Some(hit) = self.cache.get(&key) {
                return Ok(*hit);
            }
            Some(key)
        } else {
            None
        };

        let kind = match backend {
            BackendChoice::Statevector => BackendKind::Statevector,
            BackendChoice::Tensor => BackendKind::Tensor,
            BackendChoice::Auto => {
                if n <= self.statevec_cap {
                    BackendKind::Statevector
                } else {
                    BackendKind::Tensor
                }
            }
        };
        let f = match kind {
            BackendKind::Statevector => statevec::edge_zz_expectation_capped(
                sub.graph(),
                angles,
                sub.central_endpoints(),
                self.statevec_cap,
            ),
            BackendKind::Tensor => tensornet::edge_expectation_tn_with(sub, angles, &self.limits),
        }
        .map_err(|e| annotate_class(e, n))?;

        let value = ClassValue {
            f,
            vertices: n,
            backend: kind,
        };
        if let Some(key) = key {
            self.cache.insert(key, value);
        }
        Ok(value)
    }
}

fn annotate_class(e: Error, vertices: usize) -> Error {
    match e {
        Error::Capacity {
            what,
            requested,
            limit,
        } => Error::Capacity {
            what: format!("{what} [lightcone class with {vertices} vertices]"),
            requested,
            limit,
        },
        other => other,
    }
}

/// The stored tree-subgraph optimum: the conjecture-conditional performance
/// guarantee for degree-d graphs at depth p.
pub fn guarantee(d: u32, p: u32) -> Result<f64> {
    crate::angles::builtin_table(d, p).map(|entry| entry.guarantee)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, heawood_graph, petersen_graph, random_regular};
    use approx::assert_abs_diff_eq;

    fn angles(gamma: &[f64], beta: &[f64]) -> QaoaAngles {
        QaoaAngles::new(gamma.to_vec(), beta.to_vec()).unwrap()
    }

    fn table_p2() -> QaoaAngles {
        angles(&[0.488, 0.898], &[0.555, 0.293])
    }

    #[test]
    fn zero_angles_cut_half_the_edges() {
        let eval = Evaluator::new();
        let g = random_regular(10, 3, 2).unwrap();
        let report = eval
            .evaluate(&g, &angles(&[0.0], &[0.0]), BackendChoice::Auto, None)
            .unwrap();
        assert_abs_diff_eq!(report.cut_fraction, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn heawood_p2_hits_the_guarantee_with_one_class() {
        let eval = Evaluator::new();
        let h = heawood_graph();
        let report = eval
            .evaluate(&h, &table_p2(), BackendChoice::Auto, Some(21))
            .unwrap();
        // Bipartite, so C_max = M = 21 and the ratio saturates the tree value.
        assert_abs_diff_eq!(report.approximation_ratio.unwrap(), 0.7559, epsilon = 1e-3);
        assert_eq!(report.subgraph_classes, 1);
        assert_eq!(report.backend_used[0].multiplicity, 21);
    }

    #[test]
    fn shortcut_agrees_with_full_decomposition() {
        let eval = Evaluator::new();
        let h = heawood_graph();
        let fast = eval
            .evaluate(&h, &table_p2(), BackendChoice::Auto, None)
            .unwrap();
        let slow = eval
            .evaluate_with(
                &h,
                &table_p2(),
                &EvalOptions {
                    tree_shortcut: false,
                    ..EvalOptions::default()
                },
            )
            .unwrap();
        assert_abs_diff_eq!(fast.total_expectation, slow.total_expectation, epsilon = 1e-10);
        // Girth 6 exceeds 2p+1 = 5, so both paths see a single tree class.
        assert_eq!(slow.subgraph_classes, 1);
    }

    #[test]
    fn decomposition_matches_full_statevector() {
        let eval = Evaluator::new();
        let a = table_p2();
        for seed in 0..10 {
            let g = random_regular(12, 3, seed).unwrap();
            let report = eval.evaluate(&g, &a, BackendChoice::Auto, None).unwrap();
            let direct = statevec::simulate_expectation(&g, &a).unwrap();
            assert_abs_diff_eq!(report.total_expectation, direct.total, epsilon = 1e-8);
            for (x, y) in report.per_edge.iter().zip(&direct.per_edge) {
                assert_abs_diff_eq!(*x, *y, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn dedup_equals_no_dedup() {
        let eval = Evaluator::new();
        let a = table_p2();
        let g = petersen_graph();
        let with = eval.evaluate(&g, &a, BackendChoice::Auto, None).unwrap();
        let without = eval
            .evaluate_with(
                &g,
                &a,
                &EvalOptions {
                    dedup: false,
                    tree_shortcut: false,
                    ..EvalOptions::default()
                },
            )
            .unwrap();
        assert_abs_diff_eq!(
            with.total_expectation,
            without.total_expectation,
            epsilon = 1e-10
        );
        for (x, y) in with.per_edge.iter().zip(&without.per_edge) {
            assert_abs_diff_eq!(*x, *y, epsilon = 1e-10);
        }
        // Petersen lightcones are cyclic, so the conservative BFS-form key
        // may split the single isomorphism class, but never below 15 edges'
        // worth of correct values.
        assert!(with.subgraph_classes < without.subgraph_classes);
        assert_eq!(without.subgraph_classes, 15);
    }

    #[test]
    fn reports_are_bit_identical() {
        let eval = Evaluator::new();
        let g = random_regular(14, 3, 9).unwrap();
        let a = table_p2();
        let r1 = eval.evaluate(&g, &a, BackendChoice::Auto, Some(18)).unwrap();
        let r2 = eval.evaluate(&g, &a, BackendChoice::Auto, Some(18)).unwrap();
        assert_eq!(r1.total_expectation.to_bits(), r2.total_expectation.to_bits());
        for (x, y) in r1.per_edge.iter().zip(&r2.per_edge) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn canonical_keys_identify_trees() {
        let h = heawood_graph();
        let keys: std::collections::HashSet<_> = h
            .edges()
            .iter()
            .map(|&e| canonical_key(&edge_lightcone(&h, e, 2).unwrap()))
            .collect();
        assert_eq!(keys.len(), 1);

        // A tree and a cycle-containing lightcone never collide.
        let tree_key = canonical_key(
            &tree_subgraph(TreeSpec::new(3, 2).unwrap()).unwrap(),
        );
        assert_eq!(keys.into_iter().next().unwrap(), tree_key);
        let p = petersen_graph();
        let cyc_key = canonical_key(&edge_lightcone(&p, (0, 1), 2).unwrap());
        assert_ne!(tree_key, cyc_key);
    }

    #[test]
    fn division_and_empty_graph_errors() {
        let eval = Evaluator::new();
        let g = complete_graph(4);
        let a = angles(&[0.1], &[0.1]);
        assert!(matches!(
            eval.evaluate(&g, &a, BackendChoice::Auto, Some(0)),
            Err(Error::DivisionByZero(_))
        ));
        let empty = Graph::new(3, Vec::<(u32, u32)>::new()).unwrap();
        assert!(eval.evaluate(&empty, &a, BackendChoice::Auto, None).is_err());
    }

    #[test]
    fn guarantee_lookup() {
        assert_abs_diff_eq!(guarantee(3, 1).unwrap(), 0.6925, epsilon = 1e-12);
        assert_abs_diff_eq!(guarantee(3, 11).unwrap(), 0.8828, epsilon = 1e-12);
        assert!(guarantee(3, 11).unwrap() > crate::classical::GW_GUARANTEE);
        assert!(matches!(
            guarantee(6, 1),
            Err(Error::NotAvailable { degree: 6, p: 1, .. })
        ));
    }
}
