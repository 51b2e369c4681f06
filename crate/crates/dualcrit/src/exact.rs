//! Exact decision procedures for dual-criticality, built on a subset dynamic
//! program over vertex bitmasks.
//!
//! A graph is dual-critical when it admits an acyclic orientation in which
//! every vertex except a single source has odd indegree; equivalently, an
//! ordering of the vertices in which every vertex after the first sends an
//! odd number of edges to its predecessors. Loops admit no acyclic
//! orientation, so any graph with a loop fails, and by the same convention
//! no graph with a loop has a T-odd ordering.
//!
//! Only edge-multiplicity parities matter to back-degree parities, so the
//! dynamic program works on the odd-adjacency bitmasks. Deciders are exact
//! and run in `O(2^n * n)`; the hard size cap is [`EXACT_LIMIT`] vertices.

use crate::graph::{cut_size, MultiGraph, VertexSet};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard cap for the subset DP (the reachability table is `2^n` bits).
pub const EXACT_LIMIT: usize = 26;

/// Ordering certificate for dual-criticality: `indegrees[i]` is the number
/// of edges (with multiplicity) from `order[i]` back to `order[..i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodOrdering {
    pub order: Vec<usize>,
    pub indegrees: Vec<usize>,
}

/// Ordering certificate in which `order[i]` has odd back-degree exactly when
/// it belongs to `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TOddOrdering {
    pub order: Vec<usize>,
    pub indegrees: Vec<usize>,
    pub target: Vec<usize>,
}

#[inline]
fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn set_bit(bits: &mut [u64], i: usize) {
    bits[i >> 6] |= 1 << (i & 63);
}

fn check_size(g: &MultiGraph, what: &'static str) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > EXACT_LIMIT {
        return Err(Error::TooLarge {
            what,
            n: g.n(),
            limit: EXACT_LIMIT,
        });
    }
    Ok(())
}

/// Prefix sets realisable by an ordering whose every non-first vertex has odd
/// back-degree. Bit `s` of the result marks the vertex set `s`.
fn good_reachable(masks: &[u64], n: usize) -> Vec<u64> {
    let size = 1usize << n;
    let mut reach = vec![0u64; size.div_ceil(64)];
    for v in 0..n {
        set_bit(&mut reach, 1 << v);
    }
    for s in 1..size {
        if !get_bit(&reach, s) {
            continue;
        }
        let sm = s as u64;
        for v in 0..n {
            if sm >> v & 1 == 0 && (masks[v] & sm).count_ones() & 1 == 1 {
                set_bit(&mut reach, s | 1 << v);
            }
        }
    }
    reach
}

/// Prefix sets realisable by an ordering whose vertex back-degree parities
/// match membership in `t_mask`.
fn todd_reachable(masks: &[u64], n: usize, t_mask: u64) -> Vec<u64> {
    let size = 1usize << n;
    let mut reach = vec![0u64; size.div_ceil(64)];
    for v in 0..n {
        if t_mask >> v & 1 == 0 {
            set_bit(&mut reach, 1 << v);
        }
    }
    for s in 1..size {
        if !get_bit(&reach, s) {
            continue;
        }
        let sm = s as u64;
        for v in 0..n {
            if sm >> v & 1 == 0 && u64::from((masks[v] & sm).count_ones() & 1) == t_mask >> v & 1 {
                set_bit(&mut reach, s | 1 << v);
            }
        }
    }
    reach
}

/// Walk the reachability table backwards from the full set, always taking the
/// lowest-numbered vertex that admits a predecessor state. Deterministic.
fn reconstruct_order(reach: &[u64], masks: &[u64], n: usize, t_mask: u64) -> Vec<usize> {
    let mut s = (1u64 << n) - 1;
    let mut rev = Vec::with_capacity(n);
    while s.count_ones() > 1 {
        let mut found = false;
        for v in 0..n {
            if s >> v & 1 == 0 {
                continue;
            }
            let prev = s & !(1 << v);
            if get_bit(reach, prev as usize)
                && u64::from((masks[v] & prev).count_ones() & 1) == t_mask >> v & 1
            {
                rev.push(v);
                s = prev;
                found = true;
                break;
            }
        }
        assert!(found, "reachable state with no predecessor");
    }
    rev.push(s.trailing_zeros() as usize);
    rev.reverse();
    rev
}

/// Exact back-degrees (with multiplicity) of an ordering.
fn back_degrees(g: &MultiGraph, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut deg = vec![0usize; order.len()];
    for &(u, v) in g.edges() {
        if u != v && pos[u] != usize::MAX && pos[v] != usize::MAX {
            deg[pos[u].max(pos[v])] += 1;
        }
    }
    deg
}

/// Decide dual-criticality exactly. Errors on the empty graph and above
/// [`EXACT_LIMIT`] vertices when the decision is not settled by a cheap
/// filter first.
pub fn is_dual_critical(g: &MultiGraph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.has_loop() || !g.is_connected()? || !g.good_parity() {
        return Ok(false);
    }
    if g.n() >= 2 && g.is_even_graph() {
        return Ok(false);
    }
    check_size(g, "dual-criticality subset DP")?;
    let masks = g.odd_adjacency_masks()?;
    let reach = good_reachable(&masks, g.n());
    Ok(get_bit(&reach, (1 << g.n()) - 1))
}

/// Produce a good ordering when one exists. `None` exactly when the graph is
/// not dual-critical.
pub fn find_good_ordering(g: &MultiGraph) -> Result<Option<GoodOrdering>> {
    if !is_dual_critical(g)? {
        return Ok(None);
    }
    let masks = g.odd_adjacency_masks()?;
    let n = g.n();
    let reach = good_reachable(&masks, n);
    // Every peeled vertex must have odd back-parity; the base vertex left at
    // the end is never consulted, so the all-ones requirement mask is right.
    let order = reconstruct_order(&reach, &masks, n, (1u64 << n) - 1);
    let indegrees = back_degrees(g, &order);
    debug_assert!(indegrees.iter().skip(1).all(|d| d % 2 == 1));
    Ok(Some(GoodOrdering { order, indegrees }))
}

/// Produce a T-odd ordering when one exists: an ordering of all vertices in
/// which back-degree parity is odd exactly on `target`. Graphs with loops
/// never have one (matching the apex construction, which turns a loop into a
/// loop). Disconnected graphs are allowed.
pub fn find_t_odd_ordering(g: &MultiGraph, target: &VertexSet) -> Result<Option<TOddOrdering>> {
    if target.domain() != g.n() {
        return Err(Error::Precondition(format!(
            "target set over domain {} but the graph has {} vertices",
            target.domain(),
            g.n()
        )));
    }
    check_size(g, "T-odd subset DP")?;
    if g.has_loop() {
        return Ok(None);
    }
    // Sum of back-degrees over a full loopless ordering is |E|.
    if (target.len() + g.m()) % 2 == 1 {
        return Ok(None);
    }
    let n = g.n();
    let masks = g.odd_adjacency_masks()?;
    let t_mask = target.as_mask();
    let reach = todd_reachable(&masks, n, t_mask);
    if !get_bit(&reach, (1 << n) - 1) {
        return Ok(None);
    }
    let order = reconstruct_order(&reach, &masks, n, t_mask);
    let indegrees = back_degrees(g, &order);
    Ok(Some(TOddOrdering {
        order,
        indegrees,
        target: target.to_vec(),
    }))
}

fn todd_exists(g: &MultiGraph, masks: &[u64], t_mask: u64) -> bool {
    if g.has_loop() {
        return false;
    }
    if (t_mask.count_ones() as usize + g.m()) % 2 == 1 {
        return false;
    }
    let reach = todd_reachable(masks, g.n(), t_mask);
    get_bit(&reach, (1 << g.n()) - 1)
}

/// Check a good ordering against the graph it claims to certify.
pub fn verify_good_ordering(g: &MultiGraph, cert: &GoodOrdering) -> Result<()> {
    verify_permutation(g, &cert.order)?;
    if g.has_loop() {
        return Err(Error::Precondition(
            "graph has a loop; no acyclic orientation exists".into(),
        ));
    }
    let deg = back_degrees(g, &cert.order);
    if deg != cert.indegrees {
        return Err(Error::Precondition(format!(
            "stated indegrees {:?} do not match recomputed {:?}",
            cert.indegrees, deg
        )));
    }
    for (i, &d) in deg.iter().enumerate().skip(1) {
        if d % 2 == 0 {
            return Err(Error::Precondition(format!(
                "vertex {} at position {i} has even back-degree {d}",
                cert.order[i]
            )));
        }
    }
    Ok(())
}

/// Check a T-odd ordering certificate.
pub fn verify_t_odd_ordering(g: &MultiGraph, cert: &TOddOrdering) -> Result<()> {
    verify_permutation(g, &cert.order)?;
    if g.has_loop() {
        return Err(Error::Precondition(
            "graph has a loop; no T-odd ordering exists".into(),
        ));
    }
    let t = VertexSet::from_iter(g.n(), cert.target.iter().copied())?;
    let deg = back_degrees(g, &cert.order);
    if deg != cert.indegrees {
        return Err(Error::Precondition(format!(
            "stated indegrees {:?} do not match recomputed {:?}",
            cert.indegrees, deg
        )));
    }
    for (i, &d) in deg.iter().enumerate() {
        if (d % 2 == 1) != t.contains(cert.order[i]) {
            return Err(Error::Precondition(format!(
                "vertex {} has back-degree {d}, disagreeing with the target set",
                cert.order[i]
            )));
        }
    }
    Ok(())
}

fn verify_permutation(g: &MultiGraph, order: &[usize]) -> Result<()> {
    if order.len() != g.n() {
        return Err(Error::Precondition(format!(
            "ordering lists {} vertices, graph has {}",
            order.len(),
            g.n()
        )));
    }
    let mut seen = vec![false; g.n()];
    for &v in order {
        if v >= g.n() {
            return Err(Error::InvalidVertex { vertex: v, n: g.n() });
        }
        if seen[v] {
            return Err(Error::Precondition(format!("vertex {v} repeats")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Every vertex deletion leaves a dual-critical graph. Defined to be false
/// below two vertices.
pub fn is_super_dual_critical(g: &MultiGraph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() == 1 {
        return Ok(false);
    }
    if g.n() > EXACT_LIMIT + 1 {
        return Err(Error::TooLarge {
            what: "super-dual-criticality",
            n: g.n(),
            limit: EXACT_LIMIT + 1,
        });
    }
    // G - v needs |V|-1 and |E|-d(v) of different parities, for every v.
    let want = (g.n() + g.m()) % 2;
    if g.degrees().iter().any(|d| d % 2 != want) {
        return Ok(false);
    }
    for v in 0..g.n() {
        if !is_dual_critical(&g.delete_vertex(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Attach a fresh apex vertex with one edge to every vertex outside `target`.
/// The result is dual-critical exactly when the original graph has a
/// `target`-odd ordering; tests exercise that equivalence.
pub fn apex_reduction(g: &MultiGraph, target: &VertexSet) -> Result<MultiGraph> {
    if target.domain() != g.n() {
        return Err(Error::Precondition(format!(
            "target set over domain {} but the graph has {} vertices",
            target.domain(),
            g.n()
        )));
    }
    let apex = g.n();
    let mut edges = g.edges().to_vec();
    for v in 0..g.n() {
        if !target.contains(v) {
            edges.push((v, apex));
        }
    }
    MultiGraph::new(g.n() + 1, edges)
}

/// The four equivalent characterisations of dual-criticality, evaluated
/// independently so audits can confirm they agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcEquivalenceReport {
    /// Existence of a good ordering (the subset DP).
    pub direct: bool,
    /// For every vertex v there is a (V - v)-odd ordering.
    pub todd_every_source: bool,
    /// Good parity, and every proper subset with |T| = |E| (mod 2) has a
    /// T-odd ordering.
    pub todd_all_parity_subsets: bool,
    /// Single vertex, or a bipartition with odd cut whose sides both satisfy
    /// this characterisation recursively.
    pub recursive_split: bool,
}

impl DcEquivalenceReport {
    pub fn statements(&self) -> [bool; 4] {
        [
            self.direct,
            self.todd_every_source,
            self.todd_all_parity_subsets,
            self.recursive_split,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let s = self.statements();
        s.iter().all(|&b| b == s[0])
    }
}

/// Limit for the equivalence and union-property checkers, which enumerate
/// all vertex subsets and run a DP per subset.
pub const AUDIT_LIMIT: usize = 10;

fn check_audit_size(g: &MultiGraph, what: &'static str) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > AUDIT_LIMIT {
        return Err(Error::TooLarge {
            what,
            n: g.n(),
            limit: AUDIT_LIMIT,
        });
    }
    Ok(())
}

/// Evaluate all four characterisations independently.
pub fn check_dc_equivalences(g: &MultiGraph) -> Result<DcEquivalenceReport> {
    check_audit_size(g, "equivalence audit")?;
    let n = g.n();
    let masks = g.odd_adjacency_masks()?;
    let full = (1u64 << n) - 1;

    let direct = is_dual_critical(g)?;

    let todd_every_source = (0..n).all(|v| todd_exists(g, &masks, full & !(1 << v)));

    let todd_all_parity_subsets = g.good_parity()
        && (0..full).all(|t| {
            t.count_ones() as usize % 2 != g.m() % 2 || todd_exists(g, &masks, t)
        });

    let loop_mask: u64 = g
        .edges()
        .iter()
        .filter(|&&(u, v)| u == v)
        .map(|&(u, _)| 1u64 << u)
        .fold(0, |a, b| a | b);
    let mut memo = vec![None; (full as usize) + 1];
    let recursive_split = dc_by_splitting(full, &masks, loop_mask, &mut memo);

    Ok(DcEquivalenceReport {
        direct,
        todd_every_source,
        todd_all_parity_subsets,
        recursive_split,
    })
}

fn cut_parity_masks(masks: &[u64], a: u64, b: u64) -> u32 {
    let mut p = 0;
    let mut rest = a;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        p ^= (masks[v] & b).count_ones() & 1;
    }
    p
}

fn dc_by_splitting(s: u64, masks: &[u64], loop_mask: u64, memo: &mut [Option<bool>]) -> bool {
    if let Some(r) = memo[s as usize] {
        return r;
    }
    let result = if s.count_ones() == 1 {
        s & loop_mask == 0
    } else {
        // Fix the lowest vertex on the A side to halve the enumeration.
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut found = false;
        let mut x = rest;
        loop {
            if x != rest {
                let a = low | x;
                let b = s & !a;
                if cut_parity_masks(masks, a, b) == 1
                    && dc_by_splitting(a, masks, loop_mask, memo)
                    && dc_by_splitting(b, masks, loop_mask, memo)
                {
                    found = true;
                    break;
                }
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & rest;
        }
        found
    };
    memo[s as usize] = Some(result);
    result
}

/// Both sides of the identity "every parity-compatible proper subset has a
/// T-odd ordering if and only if the graph is dual-critical or super
/// dual-critical". The identity holds for loopless graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPropertyReport {
    pub all_parity_subsets_have_todd: bool,
    pub dual_critical: bool,
    pub super_dual_critical: bool,
}

impl UnionPropertyReport {
    pub fn sides_agree(&self) -> bool {
        self.all_parity_subsets_have_todd == (self.dual_critical || self.super_dual_critical)
    }
}

pub fn check_t_odd_union_property(g: &MultiGraph) -> Result<UnionPropertyReport> {
    check_audit_size(g, "union property audit")?;
    let masks = g.odd_adjacency_masks()?;
    let full = (1u64 << g.n()) - 1;
    let lhs = (0..full).all(|t| {
        t.count_ones() as usize % 2 != g.m() % 2 || todd_exists(g, &masks, t)
    });
    Ok(UnionPropertyReport {
        all_parity_subsets_have_todd: lhs,
        dual_critical: is_dual_critical(g)?,
        super_dual_critical: is_super_dual_critical(g)?,
    })
}

/// Cut parity between disjoint vertex sets, as a convenience for callers
/// reasoning about odd cuts.
pub fn odd_cut(g: &MultiGraph, a: &VertexSet, b: &VertexSet) -> Result<bool> {
    Ok(cut_size(g, a, b)? % 2 == 1)
}
