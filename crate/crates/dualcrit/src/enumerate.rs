//! Exhaustive enumeration of labelled simple graphs on few vertices, the
//! substrate for the audit harnesses. Graphs are encoded as bitmasks over
//! the edge set of the complete graph in lexicographic order.

use crate::graph::MultiGraph;
use crate::{Error, Result};

/// Vertex pairs of the complete graph in lexicographic order; bit `i` of a
/// graph mask selects `pairs[i]`.
pub fn edge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Number of labelled simple graphs on `n` vertices.
pub fn graph_count(n: usize) -> u64 {
    1u64 << (n * (n - 1) / 2)
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> MultiGraph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    MultiGraph::new(n, edges).expect("pairs are valid by construction")
}

/// Connectivity straight off the mask, cheaper than building the graph.
pub fn mask_is_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Visit every labelled simple graph on exactly `n` vertices, optionally
/// restricted to connected ones. `n` is capped at 8 (2^28 masks).
pub fn for_each_graph<F: FnMut(&MultiGraph)>(
    n: usize,
    connected_only: bool,
    mut visit: F,
) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > 8 {
        return Err(Error::TooLarge {
            what: "labelled graph enumeration",
            n,
            limit: 8,
        });
    }
    let pairs = edge_pairs(n);
    for mask in 0..graph_count(n) {
        if connected_only && !mask_is_connected(n, &pairs, mask) {
            continue;
        }
        visit(&graph_from_mask(n, &pairs, mask));
    }
    Ok(())
}
