//! Small named graphs used throughout tests and examples.

use super::Graph;

/// Complete graph K_n (n <= 62).
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            edges.push((i, j));
        }
    }
    Graph::new(n, edges).expect("complete graph is simple")
}

/// Cycle C_n (n >= 3).
pub fn cycle_graph(n: usize) -> Graph {
    let edges = (0..n as u32).map(|i| (i, (i + 1) % n as u32));
    Graph::new(n, edges).expect("cycle is simple")
}

/// Path on n vertices.
pub fn path_graph(n: usize) -> Graph {
    let edges = (0..n.saturating_sub(1) as u32).map(|i| (i, i + 1));
    Graph::new(n, edges).expect("path is simple")
}

/// The Petersen graph: 10 vertices, 3-regular, girth 5.
pub fn petersen_graph() -> Graph {
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::new(10, edges).expect("petersen is simple")
}

/// The Heawood graph: 14 vertices, 3-regular, bipartite, girth 6
/// (the point/line incidence graph of the Fano plane).
pub fn heawood_graph() -> Graph {
    // Standard construction: a 14-cycle plus chords i -- i+5 for odd i.
    let mut edges: Vec<(u32, u32)> = (0..14u32).map(|i| (i, (i + 1) % 14)).collect();
    for i in (1..14u32).step_by(2) {
        edges.push((i, (i + 5) % 14));
    }
    Graph::new(14, edges).expect("heawood is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_regularity() {
        let p = petersen_graph();
        assert_eq!(p.num_vertices(), 10);
        assert_eq!(p.num_edges(), 15);
        assert!(p.is_regular(3));

        let h = heawood_graph();
        assert_eq!(h.num_vertices(), 14);
        assert_eq!(h.num_edges(), 21);
        assert!(h.is_regular(3));

        assert_eq!(complete_graph(4).num_edges(), 6);
    }
}
