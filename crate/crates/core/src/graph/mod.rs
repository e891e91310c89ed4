//! Graph data model: immutable simple graphs, graph6 ingestion, regular-graph
//! generation, lightcone and tree-subgraph construction, structural predicates.

mod catalog;
mod generate;
mod graph6;
mod subgraph;

pub use catalog::{complete_graph, cycle_graph, heawood_graph, path_graph, petersen_graph};
pub use generate::random_regular;
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_file, read_graphs_from_path};
pub use subgraph::{edge_lightcone, tree_subgraph};

use crate::error::{Error, Result};

/// An immutable undirected simple graph. Edges are stored as `(i, j)` with
/// `i < j`, sorted lexicographically; vertex indices run over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list, normalizing each pair to `(min, max)`
    /// and sorting the list. Rejects self-loops, duplicates and out-of-range
    /// endpoints.
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut normalized: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if j as usize >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for {num_vertices} vertices"
                )));
            }
            normalized.push((i, j));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adjacency = vec![Vec::new(); num_vertices];
        for &(i, j) in &normalized {
            adjacency[i as usize].push(j);
            adjacency[j as usize].push(i);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            num_vertices,
            edges: normalized,
            adjacency,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge list in canonical storage order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Position of edge `(a, b)` in the canonical edge list.
    pub fn edge_index(&self, a: u32, b: u32) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok()
    }

    /// True when every vertex has degree exactly `d`.
    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.num_vertices).all(|v| self.adjacency[v].len() == d)
    }

    /// The common degree, if the graph is regular (and nonempty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.is_regular(d).then_some(d)
    }

    /// Two-colorability via BFS over every component.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.num_vertices];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.num_vertices {
            if color[start] != -1 {
                continue;
            }
            color[start] = 0;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if color[w as usize] == -1 {
                        color[w as usize] = 1 - color[v as usize];
                        queue.push_back(w);
                    } else if color[w as usize] == color[v as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of the shortest cycle, or `None` for forests.
    ///
    /// BFS from every vertex; the first non-tree edge seen from root `r`
    /// closes a shortest cycle through `r` at `dist[x] + dist[y] + 1`.
    pub fn girth(&self) -> Option<usize> {
        let n = self.num_vertices;
        let mut best: Option<usize> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..n as u32 {
            dist.fill(u32::MAX);
            parent.fill(u32::MAX);
            dist[root as usize] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                // Cycles through `root` longer than `best` can never improve it.
                if let Some(b) = best {
                    if 2 * dist[v as usize] as usize + 1 >= b {
                        break;
                    }
                }
                for &w in self.neighbors(v) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[v as usize] + 1;
                        parent[w as usize] = v;
                        queue.push_back(w);
                    } else if parent[v as usize] != w {
                        let cycle = (dist[v as usize] + dist[w as usize] + 1) as usize;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_vertices];
        let mut queue = std::collections::VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.num_vertices
    }

    /// BFS distances from a set of source vertices.
    pub(crate) fn distances_from(&self, sources: &[u32]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.num_vertices];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of edges cut by the bipartition encoded in `mask` (bit v = side).
    pub fn cut_size(&self, mask: u64) -> u64 {
        self.edges
            .iter()
            .filter(|&&(i, j)| (mask >> i) & 1 != (mask >> j) & 1)
            .count() as u64
    }
}

/// A subgraph extracted around a marked edge, with the relabeling map back to
/// the original graph.
#[derive(Clone, Debug)]
pub struct EdgeSubgraph {
    graph: Graph,
    central_edge: usize,
    origin_map: Vec<u32>,
}

impl EdgeSubgraph {
    pub(crate) fn new(graph: Graph, central_edge: usize, origin_map: Vec<u32>) -> Self {
        debug_assert!(central_edge < graph.num_edges());
        debug_assert_eq!(origin_map.len(), graph.num_vertices());
        EdgeSubgraph {
            graph,
            central_edge,
            origin_map,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Index of the marked edge in the subgraph's edge list.
    pub fn central_edge(&self) -> usize {
        self.central_edge
    }

    /// The marked edge's endpoints (subgraph labels).
    pub fn central_endpoints(&self) -> (u32, u32) {
        self.graph.edges()[self.central_edge]
    }

    /// Maps a subgraph vertex back to its original label.
    pub fn origin(&self, v: u32) -> u32 {
        self.origin_map[v as usize]
    }

    pub fn origin_map(&self) -> &[u32] {
        &self.origin_map
    }
}

/// Degree/depth specification for the double-tree worst-case subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeSpec {
    pub degree: u32,
    pub depth: u32,
}

impl TreeSpec {
    pub fn new(degree: u32, depth: u32) -> Result<Self> {
        if degree < 3 {
            return Err(Error::InvalidInput(format!(
                "tree degree must be >= 3, got {degree}"
            )));
        }
        if depth < 1 {
            return Err(Error::InvalidInput("tree depth must be >= 1".into()));
        }
        Ok(TreeSpec { degree, depth })
    }

    /// Vertex count of the double tree: 2 * ((d-1)^(p+1) - 1) / (d-2).
    pub fn vertex_count(&self) -> u64 {
        let b = (self.degree - 1) as u64;
        let p = self.depth;
        // Geometric sum 1 + b + ... + b^p on each side of the central edge.
        let mut side = 0u64;
        let mut pow = 1u64;
        for _ in 0..=p {
            side += pow;
            pow = pow.saturating_mul(b);
        }
        2 * side
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_normalizes_edges() {
        let g = Graph::new(4, vec![(2, 0), (0, 1), (3, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.neighbors(1), &[0, 3]);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(matches!(
            Graph::new(3, vec![(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 5)]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn girth_of_named_graphs() {
        assert_eq!(petersen_graph().girth(), Some(5));
        assert_eq!(complete_graph(4).girth(), Some(3));
        assert_eq!(heawood_graph().girth(), Some(6));
        assert_eq!(cycle_graph(6).girth(), Some(6));
        assert_eq!(path_graph(5).girth(), None);
        assert_eq!(tree_subgraph(TreeSpec::new(3, 2).unwrap()).unwrap().graph().girth(), None);
    }

    #[test]
    fn bipartite_checks() {
        assert!(heawood_graph().is_bipartite());
        assert!(!petersen_graph().is_bipartite());
        assert!(cycle_graph(6).is_bipartite());
        assert!(!cycle_graph(5).is_bipartite());
        assert!(complete_graph(4).is_regular(3));
    }

    #[test]
    fn tree_spec_vertex_counts() {
        assert_eq!(TreeSpec::new(3, 1).unwrap().vertex_count(), 6);
        assert_eq!(TreeSpec::new(3, 2).unwrap().vertex_count(), 14);
        assert_eq!(TreeSpec::new(3, 11).unwrap().vertex_count(), 8190);
        // 2 * ((d-1)^(p+1) - 1) / (d-2) for d in {3,4,5}, p <= 11
        for d in 3u32..=5 {
            for p in 1u32..=11 {
                let spec = TreeSpec::new(d, p).unwrap();
                let b = (d - 1) as u64;
                let expected = 2 * (b.pow(p + 1) - 1) / (b - 1);
                assert_eq!(spec.vertex_count(), expected, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(petersen_graph().is_connected());
        let two_edges = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
    }

    #[test]
    fn cut_size_counts_crossing_edges() {
        let k4 = complete_graph(4);
        assert_eq!(k4.cut_size(0b0011), 4);
        assert_eq!(k4.cut_size(0b0001), 3);
        assert_eq!(k4.cut_size(0), 0);
    }
}
