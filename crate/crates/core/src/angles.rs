//! Fixed-angle registry: embedded degree-3 angles and guarantees for
//! p = 1..11, a JSON storage schema for computed entries (degrees 4 and 5
//! are computed artifacts, not shipped constants), and the conjecture
//! verification driver.
//!
//! Embedded entries carry the published 3-4 digit precision; re-optimizing
//! recovers the same values to that precision.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classical::maxcut_exact_capped;
use crate::engine::{BackendChoice, Evaluator};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::statevec::QaoaAngles;

/// Absolute tolerance separating float noise from a genuine counterexample.
pub const VIOLATION_TOL: f64 = 1e-6;

/// Where an entry's numbers came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    EmbeddedTable,
    Computed {
        strategy: String,
        seed: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        date: Option<String>,
    },
}

/// One (degree, p) row: tree-optimal angles and the guarantee they realize.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedAngleEntry {
    pub degree: u32,
    pub p: u32,
    #[serde(flatten)]
    pub angles: QaoaAngles,
    pub guarantee: f64,
    pub provenance: Provenance,
}

impl FixedAngleEntry {
    fn validate(&self, context: &str) -> Result<()> {
        let p = self.p as usize;
        if self.angles.gamma().len() != p || self.angles.beta().len() != p {
            return Err(Error::Validation(format!(
                "{context}: angle vectors must have length p={p} (gamma {}, beta {})",
                self.angles.gamma().len(),
                self.angles.beta().len()
            )));
        }
        if !(self.guarantee > 0.5 && self.guarantee < 1.0) {
            return Err(Error::Validation(format!(
                "{context}.guarantee: {} outside (0.5, 1)",
                self.guarantee
            )));
        }
        if self.degree < 3 {
            return Err(Error::Validation(format!(
                "{context}.degree: {} below 3",
                self.degree
            )));
        }
        Ok(())
    }
}

/// Degree-3 tree-optimal angles for p = 1..11 (gamma row, beta row, guarantee),
/// as published.
const TABLE_3REG: [(&[f64], &[f64], f64); 11] = [
    (&[0.616], &[0.393], 0.6925),
    (&[0.488, 0.898], &[0.555, 0.293], 0.7559),
    (&[0.422, 0.798, 0.937], &[0.609, 0.459, 0.235], 0.7924),
    (
        &[0.409, 0.781, 0.988, 1.156],
        &[0.600, 0.434, 0.297, 0.159],
        0.8169,
    ),
    (
        &[0.360, 0.707, 0.823, 1.005, 1.154],
        &[0.632, 0.523, 0.390, 0.275, 0.149],
        0.8364,
    ),
    (
        &[0.331, 0.645, 0.731, 0.837, 1.009, 1.126],
        &[0.636, 0.534, 0.463, 0.360, 0.259, 0.139],
        0.8499,
    ),
    (
        &[0.310, 0.618, 0.690, 0.751, 0.859, 1.020, 1.122],
        &[0.648, 0.554, 0.490, 0.445, 0.341, 0.244, 0.131],
        0.8598,
    ),
    (
        &[0.295, 0.587, 0.654, 0.708, 0.765, 0.864, 1.026, 1.116],
        &[0.649, 0.555, 0.500, 0.469, 0.420, 0.319, 0.231, 0.123],
        0.8674,
    ),
    (
        &[0.279, 0.566, 0.631, 0.679, 0.726, 0.768, 0.875, 1.037, 1.118],
        &[0.654, 0.562, 0.509, 0.487, 0.451, 0.403, 0.305, 0.220, 0.117],
        0.8735,
    ),
    (
        &[0.267, 0.545, 0.610, 0.656, 0.696, 0.729, 0.774, 0.882, 1.044, 1.115],
        &[0.656, 0.563, 0.514, 0.496, 0.469, 0.436, 0.388, 0.291, 0.211, 0.112],
        0.8785,
    ),
    (
        &[0.257, 0.528, 0.592, 0.640, 0.677, 0.702, 0.737, 0.775, 0.884, 1.047, 1.115],
        &[0.656, 0.563, 0.516, 0.504, 0.482, 0.456, 0.421, 0.371, 0.276, 0.201, 0.107],
        0.8828,
    ),
];

/// The embedded fixed-angle row for `(d, p)`. Only degree 3, p = 1..11 ships
/// with the crate; other degrees are computed and loaded from a registry file.
pub fn builtin_table(d: u32, p: u32) -> Result<FixedAngleEntry> {
    if d == 3 && (1..=11).contains(&p) {
        let (gamma, beta, guarantee) = TABLE_3REG[p as usize - 1];
        return Ok(FixedAngleEntry {
            degree: d,
            p,
            angles: QaoaAngles::new(gamma.to_vec(), beta.to_vec()).expect("table rows are valid"),
            guarantee,
            provenance: Provenance::EmbeddedTable,
        });
    }
    Err(Error::NotAvailable {
        degree: d,
        p,
        available: "degree 3 with p in 1..=11 (embedded); compute others via tree-opt".into(),
    })
}

/// A registry of fixed-angle entries keyed by (degree, p), with a JSON
/// serialization: `{"<degree>": {"<p>": {"gamma": [...], "beta": [...],
/// "guarantee": x, "provenance": {...}}}}`. Angles are in radians.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Registry {
    entries: BTreeMap<(u32, u32), FixedAngleEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// All embedded entries.
    pub fn builtin() -> Self {
        let mut reg = Registry::new();
        for p in 1..=11 {
            reg.insert(builtin_table(3, p).unwrap()).unwrap();
        }
        reg
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, d: u32, p: u32) -> Option<&FixedAngleEntry> {
        self.entries.get(&(d, p))
    }

    /// Entry lookup falling back to the embedded table.
    pub fn lookup(&self, d: u32, p: u32) -> Result<FixedAngleEntry> {
        if let Some(entry) = self.get(d, p) {
            return Ok(entry.clone());
        }
        builtin_table(d, p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FixedAngleEntry> {
        self.entries.values()
    }

    /// Inserts an entry, rejecting duplicates.
    pub fn insert(&mut self, entry: FixedAngleEntry) -> Result<()> {
        entry.validate(&format!("angles.{}.{}", entry.degree, entry.p))?;
        let key = (entry.degree, entry.p);
        if self.entries.contains_key(&key) {
            return Err(Error::Validation(format!(
                "duplicate entry for degree {}, p {}",
                key.0, key.1
            )));
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    /// Inserts or overwrites.
    pub fn upsert(&mut self, entry: FixedAngleEntry) -> Result<()> {
        entry.validate(&format!("angles.{}.{}", entry.degree, entry.p))?;
        self.entries.insert((entry.degree, entry.p), entry);
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut tree: BTreeMap<String, BTreeMap<String, &FixedAngleEntry>> = BTreeMap::new();
        for ((d, p), entry) in &self.entries {
            tree.entry(d.to_string())
                .or_default()
                .insert(p.to_string(), entry);
        }
        Ok(serde_json::to_string_pretty(&tree)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let tree: BTreeMap<String, BTreeMap<String, FixedAngleEntry>> =
            serde_json::from_str(text)?;
        let mut reg = Registry::new();
        for (d_key, by_p) in tree {
            let d: u32 = d_key
                .parse()
                .map_err(|_| Error::Validation(format!("angles.{d_key}: degree key not an integer")))?;
            for (p_key, entry) in by_p {
                let p: u32 = p_key.parse().map_err(|_| {
                    Error::Validation(format!("angles.{d_key}.{p_key}: p key not an integer"))
                })?;
                if entry.degree != d || entry.p != p {
                    return Err(Error::Validation(format!(
                        "angles.{d_key}.{p_key}: entry labeled degree {}, p {}",
                        entry.degree, entry.p
                    )));
                }
                reg.insert(entry)?;
            }
        }
        Ok(reg)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Per-graph record of a conjecture sweep.
#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord {
    pub id: String,
    pub num_vertices: usize,
    pub expectation: f64,
    pub max_cut: u64,
    pub ratio: f64,
}

/// Outcome of evaluating an ensemble at fixed angles against exact MaxCut.
/// A single violation falsifies the conjecture for the ensemble.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub ensemble_id: String,
    pub degree: u32,
    pub p: u32,
    pub guarantee: f64,
    pub per_graph: Vec<GraphRecord>,
    pub min_ratio: f64,
    pub violations: Vec<String>,
    /// Graphs skipped because exact MaxCut exceeded its cap.
    pub skipped: Vec<String>,
}

impl ConjectureReport {
    pub fn is_falsifying(&self) -> bool {
        !self.violations.is_empty()
    }

    /// CSV rows: id, n, F_p, C_max, ratio.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,num_vertices,expectation,max_cut,ratio\n");
        for rec in &self.per_graph {
            out.push_str(&format!(
                "{},{},{:.12},{},{:.12}\n",
                rec.id, rec.num_vertices, rec.expectation, rec.max_cut, rec.ratio
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Evaluates every graph of a d-regular ensemble at the entry's fixed angles,
/// divides by exact MaxCut, and collects ratios below `guarantee - tol` as
/// violations. Non-regular graphs are rejected up front; graphs beyond the
/// MaxCut cap are recorded as skipped rather than failing the sweep.
pub fn verify_conjecture(
    ensemble: &[(String, Graph)],
    d: u32,
    entry: &FixedAngleEntry,
    evaluator: &Evaluator,
    maxcut_cap: usize,
) -> Result<ConjectureReport> {
    if entry.degree != d {
        return Err(Error::InvalidInput(format!(
            "entry is for degree {}, ensemble declared degree {d}",
            entry.degree
        )));
    }
    for (id, g) in ensemble {
        if !g.is_regular(d as usize) {
            return Err(Error::InvalidInput(format!(
                "graph {id} is not {d}-regular"
            )));
        }
    }
    let mut per_graph = Vec::with_capacity(ensemble.len());
    let mut skipped = Vec::new();
    for (id, g) in ensemble {
        let exact = match maxcut_exact_capped(g, maxcut_cap) {
            Ok(res) => res,
            Err(e) if e.is_capacity() => {
                skipped.push(id.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        let report = evaluator.evaluate(g, &entry.angles, BackendChoice::Auto, Some(exact.value))?;
        per_graph.push(GraphRecord {
            id: id.clone(),
            num_vertices: g.num_vertices(),
            expectation: report.total_expectation,
            max_cut: exact.value,
            ratio: report.approximation_ratio.expect("cmax supplied"),
        });
    }
    let min_ratio = per_graph
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let violations = per_graph
        .iter()
        .filter(|r| r.ratio < entry.guarantee - VIOLATION_TOL)
        .map(|r| r.id.clone())
        .collect();
    Ok(ConjectureReport {
        ensemble_id: format!("{} graphs, degree {d}, p {}", per_graph.len(), entry.p),
        degree: d,
        p: entry.p,
        guarantee: entry.guarantee,
        per_graph,
        min_ratio,
        violations,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn builtin_rows_match_the_published_table() {
        let e1 = builtin_table(3, 1).unwrap();
        assert_eq!(e1.angles.gamma(), &[0.616]);
        assert_eq!(e1.angles.beta(), &[0.393]);
        assert_abs_diff_eq!(e1.guarantee, 0.6925, epsilon = 0.0);

        let e5 = builtin_table(3, 5).unwrap();
        assert_eq!(e5.angles.gamma(), &[0.360, 0.707, 0.823, 1.005, 1.154]);
        assert_eq!(e5.angles.beta(), &[0.632, 0.523, 0.390, 0.275, 0.149]);
        assert_abs_diff_eq!(e5.guarantee, 0.8364, epsilon = 0.0);

        assert!(matches!(
            builtin_table(6, 1),
            Err(Error::NotAvailable { degree: 6, .. })
        ));
        assert!(builtin_table(3, 12).is_err());
    }

    #[test]
    fn guarantees_increase_with_depth() {
        let mut prev = 0.0;
        for p in 1..=11 {
            let g = builtin_table(3, p).unwrap().guarantee;
            assert!(g > prev, "p={p}: {g} <= {prev}");
            prev = g;
        }
    }

    #[test]
    fn registry_roundtrip_preserves_everything() {
        let mut reg = Registry::builtin();
        reg.insert(FixedAngleEntry {
            degree: 4,
            p: 1,
            angles: QaoaAngles::new(vec![0.55], vec![0.41]).unwrap(),
            guarantee: 0.66,
            provenance: Provenance::Computed {
                strategy: "multistart".into(),
                seed: 7,
                date: Some("2026-08-09".into()),
            },
        })
        .unwrap();
        let json = reg.to_json().unwrap();
        let back = Registry::from_json(&json).unwrap();
        assert_eq!(reg, back);
        assert_eq!(
            back.get(4, 1).unwrap().provenance,
            Provenance::Computed {
                strategy: "multistart".into(),
                seed: 7,
                date: Some("2026-08-09".into()),
            }
        );
    }

    #[test]
    fn corrupted_guarantee_is_named_in_the_error() {
        let mut reg = Registry::builtin();
        let json = reg.to_json().unwrap().replace("0.7559", "1.5");
        match Registry::from_json(&json) {
            Err(Error::Validation(msg)) => assert!(msg.contains("guarantee"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
        // Duplicate (d, p) keys are rejected on insert.
        let dup = builtin_table(3, 1).unwrap();
        assert!(matches!(reg.insert(dup), Err(Error::Validation(_))));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("registry.json");
        let reg = Registry::builtin();
        reg.save(&path).unwrap();
        assert_eq!(Registry::load(&path).unwrap(), reg);
    }

    #[test]
    fn mislabeled_entries_are_rejected() {
        let json = r#"{"3": {"2": {"degree": 3, "p": 1, "gamma": [0.6], "beta": [0.4],
            "guarantee": 0.69, "provenance": {"kind": "embedded-table"}}}}"#;
        assert!(matches!(
            Registry::from_json(json),
            Err(Error::Validation(_))
        ));
    }
}
