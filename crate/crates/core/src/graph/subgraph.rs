//! Lightcone and worst-case tree subgraph extraction.
//!
//! A depth-p circuit only correlates an edge with structure reachable through
//! cost layers, so the marked edge's expectation is computed exactly on the
//! subgraph spanned by all edges incident to a vertex within distance p-1 of
//! the edge. Vertices at distance exactly p enter only as endpoints of those
//! edges; edges joining two distance-p vertices cannot influence the marked
//! edge and are excluded.

use super::{EdgeSubgraph, Graph, TreeSpec};
use crate::error::{Error, Result};

/// Default cap on generated tree sizes (the d=5, p=11 tree is ~5e8 vertices
/// and far beyond any backend here).
pub const TREE_VERTEX_CAP: u64 = 1_000_000;

/// Extracts the depth-p lightcone of `edge`, relabeled by BFS from the
/// central edge (ties broken by original vertex index). The central edge
/// always relabels to (0, 1).
pub fn edge_lightcone(g: &Graph, edge: (u32, u32), p: u32) -> Result<EdgeSubgraph> {
    let (a, b) = edge;
    if g.edge_index(a, b).is_none() {
        return Err(Error::EdgeNotFound(a, b));
    }
    if p == 0 {
        return Err(Error::InvalidInput("lightcone depth must be >= 1".into()));
    }
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let dist = g.distances_from(&[a, b]);
    let reach = p - 1;

    // Edges with an endpoint within distance p-1 of the marked edge.
    let included: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(x, y)| dist[x as usize] <= reach || dist[y as usize] <= reach)
        .collect();

    // Adjacency over included edges only, then BFS from (a, b) for labels.
    let n = g.num_vertices();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(x, y) in &included {
        adj[x as usize].push(y);
        adj[y as usize].push(x);
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::from([a, b]);
    label[a as usize] = 0;
    label[b as usize] = 1;
    order.extend([a, b]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if label[w as usize] == u32::MAX {
                label[w as usize] = order.len() as u32;
                order.push(w);
                queue.push_back(w);
            }
        }
    }

    let edges = included
        .iter()
        .map(|&(x, y)| (label[x as usize], label[y as usize]));
    let sub = Graph::new(order.len(), edges)?;
    let central = sub
        .edge_index(0, 1)
        .expect("central edge survives relabeling");
    Ok(EdgeSubgraph::new(sub, central, order))
}

/// Builds the degree-d depth-p double tree: a central edge whose endpoints
/// each grow d-1 branches of a complete (d-1)-ary tree to depth p. Interior
/// vertices have degree d, leaves degree 1. Labels follow BFS order from the
/// central edge, matching [`edge_lightcone`]'s relabeling.
pub fn tree_subgraph(spec: TreeSpec) -> Result<EdgeSubgraph> {
    tree_subgraph_capped(spec, TREE_VERTEX_CAP)
}

/// [`tree_subgraph`] with an explicit vertex cap.
pub fn tree_subgraph_capped(spec: TreeSpec, vertex_cap: u64) -> Result<EdgeSubgraph> {
    let total = spec.vertex_count();
    if total > vertex_cap {
        return Err(Error::Capacity {
            what: format!("tree subgraph vertices (d={}, p={})", spec.degree, spec.depth),
            requested: total,
            limit: vertex_cap,
        });
    }
    let branch = spec.degree - 1;
    let mut edges = Vec::with_capacity(total as usize - 1);
    edges.push((0u32, 1u32));
    let mut frontier: Vec<u32> = vec![0, 1];
    let mut next = 2u32;
    for _ in 0..spec.depth {
        let mut new_frontier = Vec::with_capacity(frontier.len() * branch as usize);
        for &parent in &frontier {
            for _ in 0..branch {
                edges.push((parent, next));
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    debug_assert_eq!(next as u64, total);
    let graph = Graph::new(total as usize, edges)?;
    let central = graph.edge_index(0, 1).expect("central edge present");
    let origin = (0..total as u32).collect();
    Ok(EdgeSubgraph::new(graph, central, origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, heawood_graph, petersen_graph};

    #[test]
    fn tree_sizes_match_closed_form() {
        let t = tree_subgraph(TreeSpec::new(3, 2).unwrap()).unwrap();
        assert_eq!(t.graph().num_vertices(), 14);
        assert_eq!(t.graph().num_edges(), 13);
        assert_eq!(t.central_endpoints(), (0, 1));

        let t1 = tree_subgraph(TreeSpec::new(3, 1).unwrap()).unwrap();
        assert_eq!(t1.graph().num_vertices(), 6);

        let t11 = tree_subgraph(TreeSpec::new(3, 11).unwrap()).unwrap();
        assert_eq!(t11.graph().num_vertices(), 8190);
    }

    #[test]
    fn tree_degrees_are_interior_d_leaf_1() {
        let spec = TreeSpec::new(4, 2).unwrap();
        let t = tree_subgraph(spec).unwrap();
        let g = t.graph();
        let leaves = (0..g.num_vertices() as u32)
            .filter(|&v| g.degree(v) == 1)
            .count();
        let interior = (0..g.num_vertices() as u32)
            .filter(|&v| g.degree(v) == 4)
            .count();
        assert_eq!(leaves + interior, g.num_vertices());
        assert_eq!(leaves as u64, 2 * 3u64.pow(2));
    }

    #[test]
    fn tree_cap_is_enforced() {
        let spec = TreeSpec::new(5, 11).unwrap();
        assert!(matches!(
            tree_subgraph(spec),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn k4_lightcone_covers_the_graph() {
        let k4 = complete_graph(4);
        let sub = edge_lightcone(&k4, (0, 1), 1).unwrap();
        // All four vertices are within distance 1; the edge joining the two
        // distance-1 vertices cannot influence the marked edge and is dropped.
        assert_eq!(sub.graph().num_vertices(), 4);
        assert_eq!(sub.graph().num_edges(), 5);
        assert_eq!(sub.central_endpoints(), (0, 1));
    }

    #[test]
    fn six_cycle_lightcone_is_a_path() {
        let c6 = cycle_graph(6);
        let sub = edge_lightcone(&c6, (0, 1), 1).unwrap();
        assert_eq!(sub.graph().num_vertices(), 4);
        assert_eq!(sub.graph().num_edges(), 3);
        let degs: Vec<_> = (0..4u32).map(|v| sub.graph().degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
    }

    // Girth 6 leaves no room for a cycle among edges within reach of the
    // marked edge, so the Heawood lightcone must be the full double tree.
    #[test]
    fn heawood_p2_lightcone_is_the_tree() {
        let h = heawood_graph();
        for &edge in h.edges() {
            let sub = edge_lightcone(&h, edge, 2).unwrap();
            assert_eq!(sub.graph().num_vertices(), 14);
            assert_eq!(sub.graph().num_edges(), 13);
            assert_eq!(sub.graph().girth(), None);
            let tree = tree_subgraph(TreeSpec::new(3, 2).unwrap()).unwrap();
            assert_eq!(sub.graph().edges(), tree.graph().edges());
        }
    }

    #[test]
    fn petersen_p2_lightcone_keeps_cycles() {
        let p = petersen_graph();
        let sub = edge_lightcone(&p, (0, 1), 2).unwrap();
        assert_eq!(sub.graph().num_vertices(), 10);
        assert_eq!(sub.graph().num_edges(), 13);
        assert_eq!(sub.graph().girth(), Some(5));
    }

    #[test]
    fn lightcone_vertices_grow_with_p() {
        let p = petersen_graph();
        for &edge in p.edges() {
            let mut prev: Option<std::collections::BTreeSet<u32>> = None;
            for depth in 1..=3 {
                let sub = edge_lightcone(&p, edge, depth).unwrap();
                let verts: std::collections::BTreeSet<u32> =
                    sub.origin_map().iter().copied().collect();
                if let Some(ref smaller) = prev {
                    assert!(smaller.is_subset(&verts));
                }
                prev = Some(verts);
            }
        }
    }

    #[test]
    fn origin_map_is_injective() {
        let h = heawood_graph();
        let sub = edge_lightcone(&h, (3, 4), 2).unwrap();
        let mut seen = std::collections::HashSet::new();
        assert!(sub.origin_map().iter().all(|&v| seen.insert(v)));
    }

    #[test]
    fn missing_edge_is_reported() {
        let c6 = cycle_graph(6);
        assert!(matches!(
            edge_lightcone(&c6, (0, 3), 1),
            Err(Error::EdgeNotFound(0, 3))
        ));
    }

    #[test]
    fn girth_bound_implies_acyclic_lightcones() {
        // girth > 2p+1 forces every p-lightcone to be a forest.
        let h = heawood_graph(); // girth 6 > 5
        for &edge in h.edges() {
            assert_eq!(edge_lightcone(&h, edge, 2).unwrap().graph().girth(), None);
        }
        let c6 = cycle_graph(6); // girth 6 > 3
        for &edge in c6.edges() {
            assert_eq!(edge_lightcone(&c6, edge, 1).unwrap().graph().girth(), None);
        }
    }
}
