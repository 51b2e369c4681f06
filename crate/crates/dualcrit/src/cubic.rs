//! Checkers for the equivalence between dual-criticality and six other
//! descriptions of 3-regular graphs on 4k+2 vertices, plus a random cubic
//! instance generator. Everything here is desk-scale brute force: the point
//! is cross-validation, not speed.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::is_dual_critical;
use crate::graph::{MultiGraph, OrderedPartition, VertexSet};
use crate::{Error, Result};

/// A loopless 3-regular multigraph on n = 4k+2 vertices. Parallel edges are
/// fine; the two-vertex triple bond is the smallest instance.
#[derive(Debug, Clone)]
pub struct CubicInstance {
    g: MultiGraph,
    k: usize,
}

impl CubicInstance {
    pub fn new(g: MultiGraph) -> Result<Self> {
        if g.n() % 4 != 2 {
            return Err(Error::NotCubicInstance(format!(
                "{} vertices is not of the form 4k+2",
                g.n()
            )));
        }
        if g.has_loop() {
            return Err(Error::NotCubicInstance("graph has a loop".to_string()));
        }
        if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 3) {
            return Err(Error::NotCubicInstance(format!(
                "vertex {} has degree {}",
                v,
                g.degree(v)
            )));
        }
        let k = (g.n() - 2) / 4;
        Ok(CubicInstance { g, k })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn gate(&self, limit: usize, what: &'static str) -> Result<()> {
        if self.g.n() > limit {
            return Err(Error::TooLarge {
                what,
                n: self.g.n(),
                limit,
            });
        }
        Ok(())
    }

    /// Adjacency as bitmasks, ignoring multiplicity.
    fn adj_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.g.n()];
        for &(u, v) in self.g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    fn independent(&self, adj: &[u64], mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & mask != 0 {
                return false;
            }
        }
        true
    }

    /// k+1 pairwise non-adjacent vertices whose deletion leaves the rest
    /// connected, or None. First witness in increasing bitmask order.
    pub fn cond_independent_connected(&self) -> Result<Option<VertexSet>> {
        self.gate(14, "independent-connected search")?;
        let n = self.g.n();
        let adj = self.adj_masks();
        let mut mask: u64 = (1 << (self.k + 1)) - 1;
        while mask < 1 << n {
            if self.independent(&adj, mask) && connected_in_mask(&adj, !mask & ((1 << n) - 1)) {
                return Ok(Some(VertexSet::from_mask(n, mask)));
            }
            mask = next_combination(mask);
        }
        Ok(None)
    }

    /// k+1 vertices (adjacency allowed) whose deletion leaves a forest.
    pub fn cond_deletion_forest(&self) -> Result<Option<VertexSet>> {
        self.gate(14, "deletion-forest search")?;
        let n = self.g.n();
        let mut mask: u64 = (1 << (self.k + 1)) - 1;
        while mask < 1 << n {
            if self.is_forest_outside(mask) {
                return Ok(Some(VertexSet::from_mask(n, mask)));
            }
            mask = next_combination(mask);
        }
        Ok(None)
    }

    /// An independent set of any size whose deletion leaves a tree.
    pub fn cond_independent_tree(&self) -> Result<Option<VertexSet>> {
        self.gate(14, "independent-tree search")?;
        let n = self.g.n();
        let adj = self.adj_masks();
        let full = (1u64 << n) - 1;
        for mask in 0..=full {
            if mask == full || !self.independent(&adj, mask) {
                continue;
            }
            let rest = full & !mask;
            if self.is_forest_outside(mask) && connected_in_mask(&adj, rest) {
                return Ok(Some(VertexSet::from_mask(n, mask)));
            }
        }
        Ok(None)
    }

    fn is_forest_outside(&self, deleted: u64) -> bool {
        let mut dsu = Dsu::new(self.g.n());
        for &(u, v) in self.g.edges() {
            if deleted & (1 << u) != 0 || deleted & (1 << v) != 0 {
                continue;
            }
            if !dsu.union(u, v) {
                return false;
            }
        }
        true
    }

    /// A spanning tree whose removal leaves every component with an even
    /// number of edges. Returns the tree's edge ids.
    pub fn cond_spanning_tree_even_components(&self) -> Result<Option<Vec<usize>>> {
        self.gate(12, "spanning-tree enumeration")?;
        let n = self.g.n();
        let m = self.g.m();
        if n == 1 {
            return Ok(Some(vec![]));
        }
        if m < n - 1 {
            return Ok(None);
        }
        let mut mask: u64 = (1 << (n - 1)) - 1;
        while mask < 1 << m {
            if self.spanning_tree_with_even_leftover(mask) {
                let ids = (0..m).filter(|e| mask & (1 << e) != 0).collect();
                return Ok(Some(ids));
            }
            mask = next_combination(mask);
        }
        Ok(None)
    }

    fn spanning_tree_with_even_leftover(&self, tree_mask: u64) -> bool {
        let n = self.g.n();
        let mut dsu = Dsu::new(n);
        for e in 0..self.g.m() {
            if tree_mask & (1 << e) == 0 {
                continue;
            }
            let (u, v) = self.g.endpoints(e);
            if !dsu.union(u, v) {
                return false;
            }
        }
        // n-1 acyclic edges on n vertices: spanning. Now the leftover.
        let mut rest = Dsu::new(n);
        for e in 0..self.g.m() {
            if tree_mask & (1 << e) == 0 {
                let (u, v) = self.g.endpoints(e);
                rest.union(u, v);
            }
        }
        let mut edge_count = vec![0usize; n];
        for e in 0..self.g.m() {
            if tree_mask & (1 << e) == 0 {
                let (u, _) = self.g.endpoints(e);
                edge_count[rest.find(u)] += 1;
            }
        }
        edge_count.iter().all(|&c| c % 2 == 0)
    }

    /// True when every vertex r admits an orientation, not necessarily
    /// acyclic, that reaches all of V from r and gives every other vertex an
    /// odd indegree.
    pub fn cond_rooted_odd_orientation(&self) -> Result<bool> {
        let n = self.g.n();
        let m = self.g.m();
        if m > 18 {
            return Err(Error::TooLarge {
                what: "orientation enumeration",
                n: m,
                limit: 18,
            });
        }
        let mut root_ok = vec![false; n];
        let mut satisfied = 0usize;
        for orient in 0u32..1 << m {
            let mut indeg_par = 0u64;
            for e in 0..m {
                let (u, v) = self.g.endpoints(e);
                let head = if orient & (1 << e) == 0 { v } else { u };
                indeg_par ^= 1 << head;
            }
            let evens = !indeg_par & ((1u64 << n) - 1);
            let candidates: Vec<usize> = if evens == 0 {
                (0..n).filter(|&r| !root_ok[r]).collect()
            } else if evens.count_ones() == 1 {
                let r = evens.trailing_zeros() as usize;
                if root_ok[r] {
                    vec![]
                } else {
                    vec![r]
                }
            } else {
                vec![]
            };
            for r in candidates {
                if self.reaches_all(orient, r) {
                    root_ok[r] = true;
                    satisfied += 1;
                }
            }
            if satisfied == n {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn reaches_all(&self, orient: u32, r: usize) -> bool {
        let n = self.g.n();
        let mut seen = 1u64 << r;
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for e in 0..self.g.m() {
                let (u, v) = self.g.endpoints(e);
                let (tail, head) = if orient & (1 << e) == 0 { (u, v) } else { (v, u) };
                if tail == x && seen & (1 << head) == 0 {
                    seen |= 1 << head;
                    stack.push(head);
                }
            }
        }
        seen == (1u64 << n) - 1
    }

    /// Search all vertex partitions for one violating
    /// cross-edges >= classes + bad-parity-classes - 1. None means the
    /// inequality holds everywhere.
    pub fn cond_partition_inequality(&self) -> Result<Option<OrderedPartition>> {
        self.gate(11, "partition enumeration")?;
        let n = self.g.n();
        let mut labels = vec![0usize; n];
        self.partition_search(&mut labels, 1, 1)
    }

    fn partition_search(
        &self,
        labels: &mut Vec<usize>,
        next: usize,
        max_used: usize,
    ) -> Result<Option<OrderedPartition>> {
        let n = self.g.n();
        if next == n {
            let classes = max_used;
            let mut cross = 0usize;
            let mut class_n = vec![0usize; classes];
            let mut class_m = vec![0usize; classes];
            for v in 0..n {
                class_n[labels[v]] += 1;
            }
            for &(u, v) in self.g.edges() {
                if labels[u] == labels[v] {
                    class_m[labels[u]] += 1;
                } else {
                    cross += 1;
                }
            }
            let bad = (0..classes)
                .filter(|&c| (class_n[c] + class_m[c]) % 2 == 0)
                .count();
            if cross + 1 < classes + bad {
                let mut vecs = vec![Vec::new(); classes];
                for v in 0..n {
                    vecs[labels[v]].push(v);
                }
                return Ok(Some(OrderedPartition::from_vecs(n, vecs)?));
            }
            return Ok(None);
        }
        for label in 0..=max_used {
            labels[next] = label;
            let used = max_used.max(label + 1);
            if let Some(hit) = self.partition_search(labels, next + 1, used)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    /// Run the exact decision and all six structural conditions and collect
    /// the verdicts side by side.
    pub fn cubic_suite(&self) -> Result<CubicReport> {
        Ok(CubicReport {
            n: self.g.n(),
            k: self.k,
            dual_critical: is_dual_critical(&self.g)?,
            independent_connected: self.cond_independent_connected()?.map(|s| s.to_vec()),
            deletion_forest: self.cond_deletion_forest()?.map(|s| s.to_vec()),
            independent_tree: self.cond_independent_tree()?.map(|s| s.to_vec()),
            spanning_tree_even_components: self.cond_spanning_tree_even_components()?,
            rooted_odd_orientation: self.cond_rooted_odd_orientation()?,
            partition_inequality_violation: self
                .cond_partition_inequality()?
                .map(|p| p.to_vecs()),
            upper_embeddability: "out of scope (upper-embeddability)",
        })
    }
}

/// Verdicts of the exact decision and the six implemented conditions. For a
/// cubic graph on 4k+2 vertices these are all equivalent, so the verdicts
/// must match across the board; `unanimous` checks exactly that.
#[derive(Debug, Clone, Serialize)]
pub struct CubicReport {
    pub n: usize,
    pub k: usize,
    pub dual_critical: bool,
    pub independent_connected: Option<Vec<usize>>,
    pub deletion_forest: Option<Vec<usize>>,
    pub independent_tree: Option<Vec<usize>>,
    pub spanning_tree_even_components: Option<Vec<usize>>,
    pub rooted_odd_orientation: bool,
    pub partition_inequality_violation: Option<Vec<Vec<usize>>>,
    pub upper_embeddability: &'static str,
}

impl CubicReport {
    pub fn verdicts(&self) -> [bool; 7] {
        [
            self.dual_critical,
            self.independent_connected.is_some(),
            self.deletion_forest.is_some(),
            self.independent_tree.is_some(),
            self.spanning_tree_even_components.is_some(),
            self.rooted_odd_orientation,
            self.partition_inequality_violation.is_none(),
        ]
    }

    pub fn unanimous(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&b| b == v[0])
    }
}

/// Random simple connected cubic graph on n = 4k+2 vertices: a Hamilton
/// cycle plus a perfect matching, rejecting draws where a matching edge
/// duplicates a cycle edge. n = 2 has no simple cubic graph, so the triple
/// bond is returned for it.
pub fn random_cubic(n: usize, seed: u64) -> Result<MultiGraph> {
    if n % 4 != 2 {
        return Err(Error::NotCubicInstance(format!(
            "{} vertices is not of the form 4k+2",
            n
        )));
    }
    if n == 2 {
        return MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> =
            (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        let mut pairing: Vec<usize> = (0..n).collect();
        pairing.shuffle(&mut rng);
        let adjacent_on_cycle = |a: usize, b: usize| {
            edges[..n]
                .iter()
                .any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
        };
        if (0..n / 2).any(|i| adjacent_on_cycle(pairing[2 * i], pairing[2 * i + 1])) {
            continue;
        }
        for i in 0..n / 2 {
            edges.push((pairing[2 * i], pairing[2 * i + 1]));
        }
        return MultiGraph::new(n, edges);
    }
}

/// Next bitmask with the same popcount (Gosper's hack).
fn next_combination(v: u64) -> u64 {
    let t = v | (v - 1);
    let low = !t & (t + 1);
    (t + 1) | ((low - 1) >> (v.trailing_zeros() + 1))
}

fn connected_in_mask(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let mut out = adj[v] & mask & !seen;
        while out != 0 {
            let w = out.trailing_zeros() as usize;
            out &= out - 1;
            seen |= 1 << w;
            stack.push(w);
        }
    }
    seen == mask
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// False when x and y were already joined (the new edge closes a cycle).
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        self.parent[a] = b;
        true
    }
}
