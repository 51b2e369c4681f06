//! Named example graphs used across tests and the audit harnesses, together
//! with their known dual-criticality status.
//!
//! Vertex numbering conventions are documented per constructor because several
//! tests hard-code orderings and partitions against them.

use crate::graph::MultiGraph;

/// Single vertex, no edges.
pub fn k1() -> MultiGraph {
    MultiGraph::new(1, vec![]).unwrap()
}

/// Single edge.
pub fn k2() -> MultiGraph {
    MultiGraph::new(2, vec![(0, 1)]).unwrap()
}

/// Path on `n` vertices, edges (i, i+1).
pub fn path(n: usize) -> MultiGraph {
    MultiGraph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()).unwrap()
}

/// Cycle on `n >= 3` vertices, edges (i, i+1 mod n).
pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 3);
    MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
}

/// Complete graph, edges in lexicographic order.
pub fn complete(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> MultiGraph {
    MultiGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v)).collect()).unwrap()
}

pub fn triangle() -> MultiGraph {
    cycle(3)
}

/// C5 with the chord (0, 2).
pub fn c5chord() -> MultiGraph {
    let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.push((0, 2));
    MultiGraph::new(5, edges).unwrap()
}

/// K4 minus the edge (0, 3).
pub fn diamond() -> MultiGraph {
    MultiGraph::new(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Complete bipartite K_{2,3}: side {0, 1} against {2, 3, 4}.
pub fn k23() -> MultiGraph {
    MultiGraph::new(
        5,
        vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
    )
    .unwrap()
}

/// Complete bipartite K_{3,3}: side {0, 1, 2} against {3, 4, 5}.
pub fn k33() -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            edges.push((u, v));
        }
    }
    MultiGraph::new(6, edges).unwrap()
}

/// Two triangles {0,1,2} and {2,3,4} glued at vertex 2.
pub fn bowtie() -> MultiGraph {
    MultiGraph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
}

/// Two vertices joined by three parallel edges.
pub fn theta3() -> MultiGraph {
    MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

/// Triangle with every edge doubled.
pub fn doubled_triangle() -> MultiGraph {
    MultiGraph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap()
}

/// Triangles {0,1,2} and {3,4,5} joined by the bridge (2, 3). Passes every
/// cheap necessary condition for dual-criticality yet fails: an acyclic
/// orientation would need one triangle to receive the bridge, and a triangle
/// alone has no odd-indegree orientation.
pub fn two_triangles_bridge() -> MultiGraph {
    MultiGraph::new(
        6,
        vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
    )
    .unwrap()
}

/// Wheel: hub 0 joined to the cycle 1-2-...-k-1.
pub fn wheel(rim: usize) -> MultiGraph {
    assert!(rim >= 3);
    let mut edges: Vec<_> = (1..=rim).map(|v| (0, v)).collect();
    for i in 1..=rim {
        edges.push((i, if i == rim { 1 } else { i + 1 }));
    }
    MultiGraph::new(rim + 1, edges).unwrap()
}

pub fn w4() -> MultiGraph {
    wheel(4)
}

pub fn w5() -> MultiGraph {
    wheel(5)
}

/// Triangular prism: triangles {0,1,2}, {3,4,5}, rungs (i, i+3).
pub fn prism() -> MultiGraph {
    MultiGraph::new(
        6,
        vec![
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

/// 3-cube: vertices are 3-bit strings, edges flip one bit.
pub fn cube() -> MultiGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    MultiGraph::new(8, edges).unwrap()
}

/// Petersen graph: outer cycle 0-4, inner pentagram 5-9, spokes (i, i+5).
pub fn petersen() -> MultiGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    MultiGraph::new(10, edges).unwrap()
}

/// K4 with a pendant vertex 4 attached to vertex 1.
pub fn k4_pendant() -> MultiGraph {
    let mut edges = complete(4).edges().to_vec();
    edges.push((1, 4));
    MultiGraph::new(5, edges).unwrap()
}

/// Clique on `clique` vertices (even order expected by callers) plus
/// `isolates` isolated vertices.
pub fn clique_plus_isolates(clique: usize, isolates: usize) -> MultiGraph {
    let mut g = complete(clique);
    g = MultiGraph::new(clique + isolates, g.edges().to_vec()).unwrap();
    g
}

/// The named corpus with known dual-criticality ground truth.
///
/// The `two-triangles-bridge` entry is the canonical graph that defeats every
/// local necessary condition (connected, no loop, good parity, an odd degree)
/// while still failing to be dual-critical.
pub fn named_with_dc_status() -> Vec<(&'static str, MultiGraph, bool)> {
    vec![
        ("k1", k1(), true),
        ("k2", k2(), true),
        ("p3", path(3), true),
        ("p4", path(4), true),
        ("k13", star(3), true),
        ("k14", star(4), true),
        ("triangle", triangle(), false),
        ("c4", cycle(4), false),
        ("c5", cycle(5), false),
        ("c5chord", c5chord(), true),
        ("diamond", diamond(), true),
        ("k4", complete(4), false),
        ("k5", complete(5), false),
        ("k23", k23(), true),
        ("k33", k33(), true),
        ("bowtie", bowtie(), false),
        ("theta3", theta3(), true),
        ("doubled-triangle", doubled_triangle(), false),
        ("two-triangles-bridge", two_triangles_bridge(), false),
        ("w4", w4(), true),
        ("w5", w5(), false),
        ("prism", prism(), true),
        ("cube", cube(), false),
        ("petersen", petersen(), true),
    ]
}
