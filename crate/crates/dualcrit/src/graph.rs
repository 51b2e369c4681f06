//! Multigraph representation and the cut/parity arithmetic shared by every
//! decision procedure in the crate.
//!
//! Vertices are `0..n`, edge ids are dense indices into the edge list. Loops
//! and parallel edges are allowed everywhere; operations that cannot tolerate
//! them say so. All cut and degree computations count edges with multiplicity
//! (a loop contributes 2 to its endpoint's degree and to no cut).

use crate::{Error, Result};

/// Set of vertices over a fixed domain `0..n`, stored as bit blocks.
///
/// The domain size travels with the set so that unions, complements and
/// validation against a graph stay cheap and explicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, verts: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in verts {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Domain size, not the member count.
    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside domain {}", self.n);
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n);
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n, "vertex sets over different domains");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a | b)
            .collect();
        VertexSet { n: self.n, blocks }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a & b)
            .collect();
        VertexSet { n: self.n, blocks }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a & !b)
            .collect();
        VertexSet { n: self.n, blocks }
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = Self::full(self.n);
        for (b, own) in s.blocks.iter_mut().zip(&self.blocks) {
            *b &= !own;
        }
        s
    }

    /// Low 64 bits; only valid when the domain fits one block.
    pub fn as_mask(&self) -> u64 {
        assert!(self.n <= 64, "mask view requires domain <= 64");
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        assert!(n == 64 || mask >> n == 0, "mask has bits outside domain");
        VertexSet {
            n,
            blocks: if n == 0 { vec![] } else { vec![mask] },
        }
    }
}

/// Undirected multigraph with dense vertex and edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Degree with loops counting twice.
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n);
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Number of edges joining `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .count()
    }

    /// |V| and |E| have different parities. Necessary for dual-criticality.
    pub fn good_parity(&self) -> bool {
        (self.n + self.m()) % 2 == 1
    }

    /// Every degree even. Such graphs have no odd cut at all.
    pub fn is_even_graph(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        let root = dsu.find(0);
        Ok((1..self.n).all(|v| dsu.find(v) == root))
    }

    /// Adjacency lists as (edge id, other endpoint); loops appear once with
    /// `other == v`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((e, v));
            if u != v {
                adj[v].push((e, u));
            }
        }
        adj
    }

    /// Bitmask per vertex marking neighbours joined by odd multiplicity.
    /// Loops are ignored: they affect no cut parity. Requires n <= 64.
    pub fn odd_adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::TooLarge {
                what: "odd adjacency masks",
                n: self.n,
                limit: 64,
            });
        }
        let mut masks = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            if u != v {
                masks[u] ^= 1 << v;
                masks[v] ^= 1 << u;
            }
        }
        Ok(masks)
    }

    /// Simple graph with an edge wherever the multiplicity is odd; loops
    /// dropped. Preserves the parity of every cut, hence every good-partition
    /// and dual-criticality question that depends only on cut parities.
    pub fn parity_skeleton(&self) -> MultiGraph {
        let mut seen = std::collections::BTreeMap::new();
        for &(u, v) in &self.edges {
            if u != v {
                let key = (u.min(v), u.max(v));
                *seen.entry(key).or_insert(0usize) += 1;
            }
        }
        let edges = seen
            .into_iter()
            .filter(|&(_, c)| c % 2 == 1)
            .map(|(k, _)| k)
            .collect();
        MultiGraph { n: self.n, edges }
    }

    /// Induced subgraph on `keep`; returns the graph plus the map from new
    /// vertex ids to the original ids (ascending order of survivors).
    pub fn induced(&self, keep: &VertexSet) -> (MultiGraph, Vec<usize>) {
        assert_eq!(keep.domain(), self.n);
        let old_of_new: Vec<usize> = keep.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_of_old[u], new_of_old[v]))
            .collect();
        (
            MultiGraph {
                n: old_of_new.len(),
                edges,
            },
            old_of_new,
        )
    }

    pub fn delete_vertex(&self, v: usize) -> MultiGraph {
        let mut keep = VertexSet::full(self.n);
        keep.remove(v);
        self.induced(&keep).0
    }
}

/// Edges with one endpoint in `a` and the other in `b`, counted with
/// multiplicity. The sets must be disjoint; loops never cross a cut.
pub fn cut_size(g: &MultiGraph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    if !a.is_disjoint(b) {
        return Err(Error::OverlappingSets);
    }
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| {
            (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u))
        })
        .count())
}

/// Edges with both endpoints inside `x`, loops included, multiplicity kept.
pub fn induced_edge_count(g: &MultiGraph, x: &VertexSet) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| x.contains(u) && x.contains(v))
        .count()
}

/// Ordered partition of `0..n` into nonempty, disjoint, covering classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    n: usize,
    classes: Vec<VertexSet>,
}

impl OrderedPartition {
    pub fn new(n: usize, classes: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::empty(n);
        for (i, c) in classes.iter().enumerate() {
            if c.domain() != n {
                return Err(Error::MalformedPartition(format!(
                    "class {i} has domain {} but the graph has {n} vertices",
                    c.domain()
                )));
            }
            if c.is_empty() {
                return Err(Error::MalformedPartition(format!("class {i} is empty")));
            }
            if !seen.is_disjoint(c) {
                return Err(Error::MalformedPartition(format!(
                    "class {i} overlaps an earlier class"
                )));
            }
            seen = seen.union(c);
        }
        if seen.len() != n {
            return Err(Error::MalformedPartition(
                "classes do not cover the vertex set".into(),
            ));
        }
        Ok(OrderedPartition { n, classes })
    }

    pub fn from_vecs(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let sets = classes
            .into_iter()
            .map(|c| VertexSet::from_iter(n, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &VertexSet {
        &self.classes[i]
    }

    /// Union of classes `0..=i`.
    pub fn prefix(&self, i: usize) -> VertexSet {
        let mut q = VertexSet::empty(self.n);
        for c in &self.classes[..=i] {
            q = q.union(c);
        }
        q
    }

    /// Class index of each vertex.
    pub fn position_map(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, c) in self.classes.iter().enumerate() {
            for v in c.iter() {
                pos[v] = i;
            }
        }
        pos
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.to_vec()).collect()
    }
}

/// Contract every class of `p` to a single vertex. Class `i` becomes vertex
/// `i`. Edges inside a class disappear; every crossing edge survives as its
/// own parallel edge, renumbered densely in original id order.
pub fn contract_partition(g: &MultiGraph, p: &OrderedPartition) -> Result<MultiGraph> {
    if p.n() != g.n() {
        return Err(Error::MalformedPartition(format!(
            "partition over {} vertices applied to graph with {}",
            p.n(),
            g.n()
        )));
    }
    let pos = p.position_map();
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| pos[u] != pos[v])
        .map(|&(u, v)| (pos[u], pos[v]))
        .collect();
    Ok(MultiGraph {
        n: p.len(),
        edges,
    })
}

/// Spanning tree as a sorted list of edge ids: the edges that join distinct
/// components when scanned in id order. Deterministic.
pub fn spanning_tree(g: &MultiGraph) -> Result<Vec<usize>> {
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    let mut dsu = Dsu::new(g.n());
    let mut tree = Vec::with_capacity(g.n().saturating_sub(1));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if dsu.find(u) != dsu.find(v) {
            dsu.union(u, v);
            tree.push(e);
        }
    }
    Ok(tree)
}

/// Tree edges on the fundamental cycle of the non-tree edge `e`: the unique
/// path in `tree` between the endpoints of `e`. Empty for a loop.
pub fn fundamental_cycle_tree_edges(
    g: &MultiGraph,
    tree: &[usize],
    e: usize,
) -> Result<Vec<usize>> {
    if e >= g.m() {
        return Err(Error::InvalidEdge { edge: e, m: g.m() });
    }
    validate_spanning_tree(g, tree)?;
    if tree.contains(&e) {
        return Err(Error::EdgeInTree(e));
    }
    let (s, t) = g.endpoints(e);
    if s == t {
        return Ok(vec![]);
    }
    // BFS in the tree from s to t, remembering the tree edge used.
    let mut adj = vec![Vec::new(); g.n()];
    for &te in tree {
        let (u, v) = g.endpoints(te);
        adj[u].push((te, v));
        adj[v].push((te, u));
    }
    let mut via = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::from([s]);
    via[s] = usize::MAX - 1;
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        for &(te, w) in &adj[u] {
            if via[w] == usize::MAX {
                via[w] = te;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = t;
    while cur != s {
        path.push(via[cur]);
        cur = parent[cur];
    }
    path.sort_unstable();
    Ok(path)
}

pub fn validate_spanning_tree(g: &MultiGraph, tree: &[usize]) -> Result<()> {
    if tree.len() != g.n().saturating_sub(1) {
        return Err(Error::NotSpanningTree(format!(
            "{} edges given, {} required",
            tree.len(),
            g.n().saturating_sub(1)
        )));
    }
    let mut dsu = Dsu::new(g.n());
    for &e in tree {
        if e >= g.m() {
            return Err(Error::InvalidEdge { edge: e, m: g.m() });
        }
        let (u, v) = g.endpoints(e);
        if dsu.find(u) == dsu.find(v) {
            return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
        }
        dsu.union(u, v);
    }
    Ok(())
}

/// The four dual-criticality-preserving rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rewrite {
    /// Delete two parallel non-loop edges between the same endpoints.
    DeleteParallelPair { e1: usize, e2: usize },
    /// Insert two parallel edges between distinct existing vertices.
    AddParallelPair { u: usize, v: usize },
    /// Replace edge `e = (u, v)` by a path `u - w - v` through a new vertex.
    /// Loops allowed: a loop becomes a parallel pair through the new vertex.
    SubdivideEdge { e: usize },
    /// Contract a non-loop edge at an endpoint of degree exactly 2, merging
    /// it into the other endpoint.
    ContractDegreeTwo { e: usize },
}

/// Rewrite result carrying old-to-new rename maps; `None` marks deletion.
/// Entities created by the rewrite have no old id and appear only in the
/// new graph (always at the tail of the id range).
#[derive(Debug, Clone)]
pub struct Rewritten {
    pub graph: MultiGraph,
    pub vertex_map: Vec<Option<usize>>,
    pub edge_map: Vec<Option<usize>>,
}

pub fn rewrite(g: &MultiGraph, op: Rewrite) -> Result<Rewritten> {
    let identity_vertices = || (0..g.n()).map(Some).collect::<Vec<_>>();
    match op {
        Rewrite::DeleteParallelPair { e1, e2 } => {
            for e in [e1, e2] {
                if e >= g.m() {
                    return Err(Error::InvalidEdge { edge: e, m: g.m() });
                }
            }
            if e1 == e2 {
                return Err(Error::RewritePrecondition(
                    "two distinct edges required".into(),
                ));
            }
            let (a, b) = g.endpoints(e1);
            let (c, d) = g.endpoints(e2);
            if !((a, b) == (c, d) || (a, b) == (d, c)) {
                return Err(Error::RewritePrecondition(format!(
                    "edges {e1} and {e2} are not parallel"
                )));
            }
            if a == b {
                return Err(Error::RewritePrecondition(
                    "parallel pair deletion is undefined on loops".into(),
                ));
            }
            let mut edge_map = vec![None; g.m()];
            let mut edges = Vec::with_capacity(g.m() - 2);
            for (e, &ends) in g.edges().iter().enumerate() {
                if e != e1 && e != e2 {
                    edge_map[e] = Some(edges.len());
                    edges.push(ends);
                }
            }
            Ok(Rewritten {
                graph: MultiGraph { n: g.n(), edges },
                vertex_map: identity_vertices(),
                edge_map,
            })
        }
        Rewrite::AddParallelPair { u, v } => {
            for w in [u, v] {
                if w >= g.n() {
                    return Err(Error::InvalidVertex { vertex: w, n: g.n() });
                }
            }
            if u == v {
                return Err(Error::RewritePrecondition(
                    "parallel pair insertion requires distinct vertices".into(),
                ));
            }
            let mut edges = g.edges().to_vec();
            edges.push((u, v));
            edges.push((u, v));
            Ok(Rewritten {
                graph: MultiGraph { n: g.n(), edges },
                vertex_map: identity_vertices(),
                edge_map: (0..g.m()).map(Some).collect(),
            })
        }
        Rewrite::SubdivideEdge { e } => {
            if e >= g.m() {
                return Err(Error::InvalidEdge { edge: e, m: g.m() });
            }
            let (u, v) = g.endpoints(e);
            let w = g.n();
            let mut edge_map = vec![None; g.m()];
            let mut edges = Vec::with_capacity(g.m() + 1);
            for (i, &ends) in g.edges().iter().enumerate() {
                if i != e {
                    edge_map[i] = Some(edges.len());
                    edges.push(ends);
                }
            }
            edges.push((u, w));
            edges.push((w, v));
            Ok(Rewritten {
                graph: MultiGraph { n: g.n() + 1, edges },
                vertex_map: identity_vertices(),
                edge_map,
            })
        }
        Rewrite::ContractDegreeTwo { e } => {
            if e >= g.m() {
                return Err(Error::InvalidEdge { edge: e, m: g.m() });
            }
            let (u, v) = g.endpoints(e);
            if u == v {
                return Err(Error::RewritePrecondition(
                    "cannot contract a loop".into(),
                ));
            }
            // Contract into the surviving endpoint; prefer removing `v`,
            // falling back to `u`, so the choice is deterministic.
            let (keep, gone) = if g.degree(v) == 2 {
                (u, v)
            } else if g.degree(u) == 2 {
                (v, u)
            } else {
                return Err(Error::RewritePrecondition(format!(
                    "edge {e} has no endpoint of degree 2"
                )));
            };
            let mut vertex_map: Vec<Option<usize>> = vec![None; g.n()];
            let mut next = 0;
            for x in 0..g.n() {
                if x != gone {
                    vertex_map[x] = Some(next);
                    next += 1;
                }
            }
            let relabel = |x: usize| vertex_map[if x == gone { keep } else { x }].unwrap();
            let mut edge_map = vec![None; g.m()];
            let mut edges = Vec::with_capacity(g.m() - 1);
            for (i, &(a, b)) in g.edges().iter().enumerate() {
                if i != e {
                    edge_map[i] = Some(edges.len());
                    edges.push((relabel(a), relabel(b)));
                }
            }
            Ok(Rewritten {
                graph: MultiGraph { n: g.n() - 1, edges },
                vertex_map,
                edge_map,
            })
        }
    }
}

/// Reduce to a simple graph while preserving dual-criticality: every loop is
/// subdivided twice (becoming a triangle through two new vertices), then
/// parallel edges are deleted in pairs until at most one edge joins any pair
/// of vertices. Original vertices keep their ids; subdivision vertices are
/// appended. Idempotent on simple graphs.
pub fn normalize_to_simple(g: &MultiGraph) -> MultiGraph {
    let mut n = g.n();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.m() + 2);
    for &(u, v) in g.edges() {
        if u == v {
            let (a, b) = (n, n + 1);
            n += 2;
            edges.push((u, a));
            edges.push((a, b));
            edges.push((b, u));
        } else {
            edges.push((u, v));
        }
    }
    let mut mult = std::collections::HashMap::new();
    for &(u, v) in &edges {
        *mult.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
    }
    let mut kept = std::collections::HashMap::new();
    let edges = edges
        .into_iter()
        .filter(|&(u, v)| {
            let key = (u.min(v), u.max(v));
            let k = kept.entry(key).or_insert(0usize);
            *k += 1;
            // Keep the first (multiplicity mod 2) copies, i.e. at most one.
            *k <= mult[&key] % 2
        })
        .collect();
    MultiGraph { n, edges }
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

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
