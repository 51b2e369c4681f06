//! Good k-partitions and the largest-k machinery built on them.
//!
//! An ordered partition (P1, ..., Pk) of the vertices is *good* when for every
//! i >= 2 the cut between P_i and the union of the earlier classes has odd
//! size. Contracting the classes of a good partition and reading them in order
//! gives a good ordering of the contracted graph, so a graph is k-dual-critical
//! exactly when it has a good partition with k classes. `maxdc` is the largest
//! such k; it is 1 precisely on even graphs and n precisely on dual-critical
//! ones.
//!
//! Everything here depends only on cut parities, so all routines work on the
//! parity skeleton (odd-multiplicity adjacency, loops dropped) and accept
//! arbitrary multigraphs, connected or not.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::graph::{MultiGraph, OrderedPartition, VertexSet};
use crate::{Error, Result};

/// Vertex bound for the exact recursive decision (bitmask state).
pub const RECURSIVE_LIMIT: usize = 32;
/// Vertex bound for the subset-DP maxdc oracle.
pub const MAXDC_ORACLE_LIMIT: usize = 20;

/// Odd-multiplicity neighbour lists, the only view of the graph the partition
/// routines need. Loops are dropped; they affect no cut parity.
struct ParityAdj {
    nbr: Vec<Vec<usize>>,
}

impl ParityAdj {
    fn new(g: &MultiGraph) -> Self {
        let sk = g.parity_skeleton();
        let mut nbr = vec![Vec::new(); sk.n()];
        for &(u, v) in sk.edges() {
            nbr[u].push(v);
            nbr[v].push(u);
        }
        for list in &mut nbr {
            list.sort_unstable();
        }
        ParityAdj { nbr }
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbr[u].binary_search(&v).is_ok()
    }
}

/// Does the ordered partition satisfy the odd-cut condition for every class
/// after the first? Errors only on a partition over the wrong vertex count.
pub fn verify_good_partition(g: &MultiGraph, p: &OrderedPartition) -> Result<bool> {
    if p.n() != g.n() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.n(),
            g.n()
        )));
    }
    let pos = p.position_map();
    // Parity of the cut between each class and the union of earlier classes.
    // An edge with endpoints in classes a < b crosses exactly the prefix cut
    // of class b.
    let mut parity = vec![false; p.len()];
    for &(u, v) in g.parity_skeleton().edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        if a != b {
            parity[b] = !parity[b];
        }
    }
    Ok(parity.iter().skip(1).all(|&odd| odd))
}

fn parity_of(mask: u64) -> bool {
    mask.count_ones() % 2 == 1
}

/// Exact decision by depth-first peeling of a final class, memoised on the
/// remaining vertex set. Beyond the first class only singletons and pairs need
/// to be tried: any good partition can be left-aligned into that shape without
/// losing classes. A singleton {v} works when v has odd degree in the
/// remaining graph; a pair {v,w} works when d(v)+d(w) is odd there (the shared
/// edges cancel in the cut). The remainder is never peeled to empty, so the
/// first class stays nonempty.
pub fn recursive_kdc(g: &MultiGraph, k: usize) -> Result<Option<OrderedPartition>> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if n > RECURSIVE_LIMIT {
        return Err(Error::TooLarge {
            what: "recursive k-partition search",
            n,
            limit: RECURSIVE_LIMIT,
        });
    }
    let masks = g.odd_adjacency_masks()?;
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut dead: HashMap<(u64, usize), ()> = HashMap::new();

    fn search(
        s: u64,
        left: usize,
        masks: &[u64],
        n: usize,
        dead: &mut HashMap<(u64, usize), ()>,
    ) -> Option<Vec<u64>> {
        if left == 1 {
            return Some(vec![s]);
        }
        if dead.contains_key(&(s, left)) {
            return None;
        }
        for v in 0..n {
            let bv = 1u64 << v;
            if s & bv == 0 {
                continue;
            }
            let rest = s & !bv;
            if rest != 0 && parity_of(masks[v] & rest) {
                if let Some(mut classes) = search(rest, left - 1, masks, n, dead) {
                    classes.push(bv);
                    return Some(classes);
                }
            }
        }
        for v in 0..n {
            let bv = 1u64 << v;
            if s & bv == 0 {
                continue;
            }
            for w in v + 1..n {
                let bw = 1u64 << w;
                if s & bw == 0 {
                    continue;
                }
                let rest = s & !bv & !bw;
                if rest == 0 {
                    continue;
                }
                if parity_of(masks[v] & rest) != parity_of(masks[w] & rest) {
                    if let Some(mut classes) = search(rest, left - 1, masks, n, dead) {
                        classes.push(bv | bw);
                        return Some(classes);
                    }
                }
            }
        }
        dead.insert((s, left), ());
        None
    }

    match search(full, k, &masks, n, &mut dead) {
        None => Ok(None),
        Some(class_masks) => {
            let classes = class_masks
                .into_iter()
                .map(|m| VertexSet::from_mask(n, m))
                .collect();
            let p = OrderedPartition::new(n, classes)?;
            debug_assert!(verify_good_partition(g, &p)?);
            Ok(Some(p))
        }
    }
}

/// Largest k admitting a good k-partition, plus how many pair contractions
/// away from a dual-critical quotient that leaves the graph (n - maxdc).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxdcResult {
    pub maxdc: usize,
    pub contractions_needed: usize,
}

/// Subset DP for maxdc. h(S) is the longest run of later classes (each of
/// size <= 2, odd cut back to the prefix) that partitions the complement of S
/// when S is the union of all earlier classes; the first class is any nonempty
/// S itself. Size-two tails suffice for the same left-alignment reason as in
/// `recursive_kdc`. Even graphs short-circuit to 1.
pub fn maxdc_oracle(g: &MultiGraph) -> Result<MaxdcResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAXDC_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "maxdc subset DP",
            n,
            limit: MAXDC_ORACLE_LIMIT,
        });
    }
    if g.is_even_graph() {
        return Ok(MaxdcResult {
            maxdc: 1,
            contractions_needed: n - 1,
        });
    }
    let masks = g.odd_adjacency_masks()?;
    let full: usize = (1usize << n) - 1;
    // -1 marks prefix unions whose complement cannot be finished off.
    let mut h = vec![-1i8; full + 1];
    h[full] = 0;
    let mut best = 1i8; // S = V, empty tail
    for s in (1..full).rev() {
        let su = s as u64;
        let mut cand = -1i8;
        for v in 0..n {
            if s & (1 << v) != 0 {
                continue;
            }
            let pv = parity_of(masks[v] & su);
            if pv && h[s | (1 << v)] >= 0 {
                cand = cand.max(1 + h[s | (1 << v)]);
            }
            for w in v + 1..n {
                if s & (1 << w) != 0 {
                    continue;
                }
                if pv != parity_of(masks[w] & su) {
                    let t = s | (1 << v) | (1 << w);
                    if h[t] >= 0 {
                        cand = cand.max(1 + h[t]);
                    }
                }
            }
        }
        h[s] = cand;
        if cand >= 0 {
            best = best.max(1 + cand);
        }
    }
    let maxdc = best as usize;
    Ok(MaxdcResult {
        maxdc,
        contractions_needed: n - maxdc,
    })
}

/// Working form of a partition: sorted member lists plus a vertex-to-class
/// index map, everything measured against the parity skeleton.
struct Parts<'a> {
    adj: &'a ParityAdj,
    classes: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl<'a> Parts<'a> {
    fn new(adj: &'a ParityAdj, p: &OrderedPartition) -> Self {
        let classes = p.to_vecs();
        let pos = p.position_map();
        Parts { adj, classes, pos }
    }

    fn to_partition(&self, n: usize) -> Result<OrderedPartition> {
        OrderedPartition::from_vecs(n, self.classes.clone())
    }

    fn rebuild_pos(&mut self) {
        for (j, class) in self.classes.iter().enumerate() {
            for &v in class {
                self.pos[v] = j;
            }
        }
    }

    /// Parity of |N(v) ∩ class j|.
    fn class_parity(&self, v: usize, j: usize) -> bool {
        self.adj.nbr[v].iter().filter(|&&u| self.pos[u] == j).count() % 2 == 1
    }

    /// Parity of |N(v) ∩ (classes 0..j)|.
    fn prefix_parity(&self, v: usize, j: usize) -> bool {
        self.adj.nbr[v].iter().filter(|&&u| self.pos[u] < j).count() % 2 == 1
    }

    /// Lowest member of class j with odd degree inside the class.
    fn induced_odd_vertex(&self, j: usize) -> Option<usize> {
        self.classes[j]
            .iter()
            .copied()
            .find(|&v| self.class_parity(v, j))
    }

    fn is_aligned(&self) -> bool {
        self.classes.iter().skip(1).all(|c| c.len() <= 2)
    }

    /// Split class j around an odd-induced-degree vertex x into two classes
    /// occupying positions j and j+1. The singleton goes first when its cut to
    /// the prefix is odd (the rest then inherits an odd cut), otherwise last;
    /// the first class splits with the singleton trailing. Errors when the
    /// class induces an even graph.
    fn split_class(&mut self, j: usize) -> Result<()> {
        let x = self.induced_odd_vertex(j).ok_or_else(|| {
            Error::Precondition(format!("class {} induces an even graph", j))
        })?;
        let rest: Vec<usize> = self.classes[j].iter().copied().filter(|&v| v != x).collect();
        let (first, second) = if j == 0 {
            (rest, vec![x])
        } else if self.prefix_parity(x, j) {
            (vec![x], rest)
        } else {
            (rest, vec![x])
        };
        self.classes[j] = first;
        self.classes.insert(j + 1, second);
        self.rebuild_pos();
        Ok(())
    }

    /// Move `members` out of class j into class `to`, keeping lists sorted.
    fn move_set(&mut self, j: usize, members: &[usize], to: usize) {
        self.classes[j].retain(|v| !members.contains(v));
        self.classes[to].extend_from_slice(members);
        self.classes[to].sort_unstable();
        for &v in members {
            self.pos[v] = to;
        }
    }
}

/// Split a non-even class of a good partition into two classes, preserving
/// goodness and raising the class count by one. The split isolates the lowest
/// vertex of odd induced degree. Errors when the class is even-induced or the
/// partition is not good.
pub fn split_noneulerian_class(
    g: &MultiGraph,
    p: &OrderedPartition,
    class_idx: usize,
) -> Result<OrderedPartition> {
    if class_idx >= p.len() {
        return Err(Error::MalformedPartition(format!(
            "class index {} out of range for {} classes",
            class_idx,
            p.len()
        )));
    }
    if !verify_good_partition(g, p)? {
        return Err(Error::Precondition(
            "partition is not good".to_string(),
        ));
    }
    let adj = ParityAdj::new(g);
    let mut parts = Parts::new(&adj, p);
    parts.split_class(class_idx)?;
    let out = parts.to_partition(g.n())?;
    debug_assert!(verify_good_partition(g, &out)?);
    Ok(out)
}

/// Left-align a good partition: make every class after the first have size
/// <= 2 without losing classes. Works from the last class towards the front.
/// A non-even class is split first. An even class of size >= 3 at position
/// i >= 3 always contains a proper subset S with even cut to both the
/// pre-prefix and the previous class (classify the first member, the second
/// member and the rest by those two cut parities: a zero vector or a repeated
/// value yields S, and all three distinct is impossible because the whole
/// class has odd prefix cut); moving S into the previous class preserves
/// goodness. At position 2 the class keeps one vertex with odd cut to the
/// first class and donates the rest to it.
pub fn left_align(g: &MultiGraph, p: &OrderedPartition) -> Result<OrderedPartition> {
    if !verify_good_partition(g, p)? {
        return Err(Error::Precondition(
            "partition is not good".to_string(),
        ));
    }
    let adj = ParityAdj::new(g);
    let mut parts = Parts::new(&adj, p);
    let input_len = parts.classes.len();
    let mut i = parts.classes.len() - 1;
    while i >= 1 {
        if parts.classes[i].len() <= 2 {
            i -= 1;
            continue;
        }
        if parts.induced_odd_vertex(i).is_some() {
            parts.split_class(i)?;
            i += 1;
            continue;
        }
        if i == 1 {
            // Keep one vertex with odd cut to the first class, donate the rest.
            let keep = parts.classes[1]
                .iter()
                .copied()
                .find(|&v| parts.class_parity(v, 0))
                .ok_or_else(|| Error::Internal("odd class cut with no odd vertex".into()))?;
            let movers: Vec<usize> = parts.classes[1]
                .iter()
                .copied()
                .filter(|&v| v != keep)
                .collect();
            parts.move_set(1, &movers, 0);
            continue;
        }
        // Even class of size >= 3 at position i >= 3 (1-based): pick a movable
        // subset by the two cut parities (pre-prefix, previous class).
        let z = |members: &[usize]| -> (bool, bool) {
            let mut zq = false;
            let mut zp = false;
            for &v in members {
                zq ^= parts.prefix_parity(v, i - 1);
                zp ^= parts.class_parity(v, i - 1);
            }
            (zq, zp)
        };
        let a = vec![parts.classes[i][0]];
        let b = vec![parts.classes[i][1]];
        let c: Vec<usize> = parts.classes[i][2..].to_vec();
        let (za, zb, zc) = (z(&a), z(&b), z(&c));
        let movers: Vec<usize> = if za == (false, false) {
            a
        } else if zb == (false, false) {
            b
        } else if zc == (false, false) {
            c
        } else if za == zb {
            a.into_iter().chain(b).collect()
        } else if za == zc {
            a.into_iter().chain(c).collect()
        } else if zb == zc {
            b.into_iter().chain(c).collect()
        } else {
            return Err(Error::Internal(
                "no movable subset in an even class".into(),
            ));
        };
        parts.move_set(i, &movers, i - 1);
    }
    let out = parts.to_partition(g.n())?;
    debug_assert!(verify_good_partition(g, &out)?);
    debug_assert!(out.len() >= input_len);
    Ok(out)
}

/// Greedy good partition with every class even-induced, built by peeling
/// classes from the back: repeatedly delete one odd-degree vertex, or a
/// non-adjacent odd/even vertex pair, whose removal leaves a non-even graph.
/// When no such deletion exists and the graph is still non-even, deleting the
/// lowest odd vertex leaves an even remainder (the stuck position is an even
/// clique plus isolated vertices), which becomes the first class. Classes
/// after the first are singletons or pairs, so the result is left-aligned, and
/// singletons plus non-adjacent pairs induce even (empty) subgraphs, so it is
/// maximal.
pub fn greedy_maximal_partition(g: &MultiGraph) -> Result<OrderedPartition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let adj = ParityAdj::new(g);
    let mut alive = vec![true; n];
    let mut par: Vec<bool> = (0..n).map(|v| adj.nbr[v].len() % 2 == 1).collect();
    let mut odd_count = par.iter().filter(|&&b| b).count();
    let mut peeled: Vec<Vec<usize>> = Vec::new();

    let delete = |v: usize, alive: &mut Vec<bool>, par: &mut Vec<bool>, odd_count: &mut usize| {
        if par[v] {
            *odd_count -= 1;
        }
        alive[v] = false;
        for &u in &adj.nbr[v] {
            if alive[u] {
                if par[u] {
                    *odd_count -= 1;
                } else {
                    *odd_count += 1;
                }
                par[u] = !par[u];
            }
        }
    };

    loop {
        if odd_count == 0 {
            break;
        }
        // An odd vertex whose deletion keeps the graph non-even.
        let mut single = None;
        for v in 0..n {
            if !alive[v] || !par[v] {
                continue;
            }
            let mut alive_nbrs = 0usize;
            let mut odd_nbrs = 0usize;
            for &u in &adj.nbr[v] {
                if alive[u] {
                    alive_nbrs += 1;
                    if par[u] {
                        odd_nbrs += 1;
                    }
                }
            }
            // Deleting v flips exactly its alive neighbours, so the remainder
            // is even iff the odd vertices besides v are exactly N(v).
            let leaves_even = alive_nbrs == odd_nbrs && odd_nbrs == odd_count - 1;
            if !leaves_even {
                single = Some(v);
                break;
            }
        }
        if let Some(v) = single {
            delete(v, &mut alive, &mut par, &mut odd_count);
            peeled.push(vec![v]);
            continue;
        }
        // Every odd vertex now leaves an even remainder. Try a non-adjacent
        // odd/even pair; given the above, the remainder after deleting {v,w}
        // is non-even iff w still has an alive odd neighbour besides v.
        let v = (0..n).find(|&v| alive[v] && par[v]).expect("odd vertex exists");
        let mut pair = None;
        for w in 0..n {
            if !alive[w] || par[w] || w == v || adj.adjacent(v, w) {
                continue;
            }
            if adj.nbr[w].iter().any(|&u| alive[u] && u != v) {
                pair = Some(w);
                break;
            }
        }
        if let Some(w) = pair {
            delete(v, &mut alive, &mut par, &mut odd_count);
            delete(w, &mut alive, &mut par, &mut odd_count);
            let mut class = vec![v.min(w), v.max(w)];
            class.sort_unstable();
            peeled.push(class);
            continue;
        }
        // Stuck: peel the lowest odd vertex; the remainder is even.
        delete(v, &mut alive, &mut par, &mut odd_count);
        peeled.push(vec![v]);
    }
    let first: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    debug_assert!(!first.is_empty());
    let mut classes = vec![first];
    classes.extend(peeled.into_iter().rev());
    let p = OrderedPartition::from_vecs(n, classes)?;
    debug_assert!(verify_good_partition(g, &p)?);
    Ok(p)
}

/// Is every class even in the induced subgraph? (Loops never break evenness.)
pub fn is_maximal_partition(g: &MultiGraph, p: &OrderedPartition) -> bool {
    let adj = ParityAdj::new(g);
    let parts = Parts::new(&adj, p);
    (0..parts.classes.len()).all(|j| parts.induced_odd_vertex(j).is_none())
}

/// Is every class after the first of size <= 2?
pub fn is_left_aligned(p: &OrderedPartition) -> bool {
    p.classes().iter().skip(1).all(|c| c.len() <= 2)
}

/// First indices at which each first-class vertex sees an even (sigma0) or
/// odd (sigma1) cut to a later class. Positions are 1-based (the first class
/// is position 1), None means no such class. A zero cut counts as even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaIndex {
    pub sigma0: BTreeMap<usize, Option<usize>>,
    pub sigma1: BTreeMap<usize, Option<usize>>,
}

pub fn sigma_indices(g: &MultiGraph, p: &OrderedPartition) -> Result<SigmaIndex> {
    if !verify_good_partition(g, p)? || !is_left_aligned(p) || !is_maximal_partition(g, p) {
        return Err(Error::Precondition(
            "sigma indices need a good, maximal, left-aligned partition".to_string(),
        ));
    }
    let adj = ParityAdj::new(g);
    let parts = Parts::new(&adj, p);
    let mut sigma0 = BTreeMap::new();
    let mut sigma1 = BTreeMap::new();
    for &v in &parts.classes[0] {
        let mut s0 = None;
        let mut s1 = None;
        for j in 1..parts.classes.len() {
            let odd = parts.class_parity(v, j);
            if odd && s1.is_none() {
                s1 = Some(j + 1);
            }
            if !odd && s0.is_none() {
                s0 = Some(j + 1);
            }
            if s0.is_some() && s1.is_some() {
                break;
            }
        }
        sigma0.insert(v, s0);
        sigma1.insert(v, s1);
    }
    Ok(SigmaIndex { sigma0, sigma1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    /// Pairwise adjacent with equal closed neighbourhoods.
    C,
    /// Pairwise non-adjacent with equal open neighbourhoods.
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub kind: WitnessKind,
    pub members: Vec<usize>,
}

/// One improvement step on a good, maximal, left-aligned partition. Classifies
/// the first class into isolated vertices and (when the non-isolated part is a
/// clique) clique vertices, then fires the first applicable rule:
///
/// 1. two isolated vertices with the same finite sigma1 move to that class;
/// 2. two isolated vertices with sigma1 = None and different neighbourhoods
///    move to the first class where the neighbourhoods differ;
/// 3. two clique vertices with the same finite sigma0 move to that class;
/// 4. two clique vertices with sigma0 = None and different neighbourhoods
///    outside the first class move to the first class where they differ.
///
/// Each move keeps the partition good and makes the target class non-even, so
/// splitting and re-aligning yields strictly more classes. Returns None when
/// no rule fires (or the first class would be emptied).
pub fn improve_once(g: &MultiGraph, p: &OrderedPartition) -> Result<Option<OrderedPartition>> {
    if !verify_good_partition(g, p)? || !is_left_aligned(p) || !is_maximal_partition(g, p) {
        return Err(Error::Precondition(
            "improvement needs a good, maximal, left-aligned partition".to_string(),
        ));
    }
    let adj = ParityAdj::new(g);
    let mut parts = Parts::new(&adj, p);
    let input_len = parts.classes.len();
    if parts.classes[0].len() <= 2 {
        // Moving a pair out would empty the first class.
        return Ok(None);
    }
    let sigma = sigma_indices(g, p)?;
    let first = parts.classes[0].clone();
    let isolated: Vec<usize> = first
        .iter()
        .copied()
        .filter(|&v| adj.nbr[v].iter().all(|&u| parts.pos[u] != 0))
        .collect();
    let nonisolated: Vec<usize> = first
        .iter()
        .copied()
        .filter(|&v| !isolated.contains(&v))
        .collect();
    let clique_ok = nonisolated.iter().all(|&v| {
        adj.nbr[v].iter().filter(|&&u| parts.pos[u] == 0).count() == nonisolated.len() - 1
    });
    // Signature outside the first class; isolated vertices have no first-class
    // neighbours, clique vertices differ inside it only trivially.
    let outside_sig = |v: usize| -> Vec<usize> {
        adj.nbr[v]
            .iter()
            .copied()
            .filter(|&u| parts.pos[u] != 0)
            .collect()
    };
    // The lowest class position (1-based) where two signatures differ.
    let first_diff = |u: usize, v: usize| -> usize {
        let su = outside_sig(u);
        let sv = outside_sig(v);
        let mut diff: Vec<usize> = su.iter().filter(|x| !sv.contains(x)).copied().collect();
        diff.extend(sv.iter().filter(|x| !su.contains(x)));
        diff.iter().map(|&x| parts.pos[x] + 1).min().expect("signatures differ")
    };

    let mut fire: Option<(usize, usize, usize)> = None; // (u, v, 1-based target)

    // Rule 1.
    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &isolated {
        if let Some(s) = sigma.sigma1[&v] {
            buckets.entry(s).or_default().push(v);
        }
    }
    for (s, members) in &buckets {
        if members.len() >= 2 {
            fire = Some((members[0], members[1], *s));
            break;
        }
    }
    // Rule 2.
    if fire.is_none() {
        let mut sigs: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &v in &isolated {
            if sigma.sigma1[&v].is_none() {
                sigs.entry(outside_sig(v)).or_default().push(v);
            }
        }
        if sigs.len() >= 2 {
            let mut it = sigs.values();
            let u = it.next().unwrap()[0];
            let v = it.next().unwrap()[0];
            fire = Some((u, v, first_diff(u, v)));
        }
    }
    // Rule 3.
    if fire.is_none() && clique_ok {
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &nonisolated {
            if let Some(s) = sigma.sigma0[&v] {
                buckets.entry(s).or_default().push(v);
            }
        }
        for (s, members) in &buckets {
            if members.len() >= 2 {
                fire = Some((members[0], members[1], *s));
                break;
            }
        }
    }
    // Rule 4.
    if fire.is_none() && clique_ok {
        let mut sigs: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &v in &nonisolated {
            if sigma.sigma0[&v].is_none() {
                sigs.entry(outside_sig(v)).or_default().push(v);
            }
        }
        if sigs.len() >= 2 {
            let mut it = sigs.values();
            let u = it.next().unwrap()[0];
            let v = it.next().unwrap()[0];
            fire = Some((u, v, first_diff(u, v)));
        }
    }

    let Some((u, v, target)) = fire else {
        return Ok(None);
    };
    let mut movers = vec![u.min(v), u.max(v)];
    movers.dedup();
    parts.move_set(0, &movers, target - 1);

    // Restore: split every non-even class, then re-align; splits keep an
    // aligned partition aligned, so the loop settles.
    let n = g.n();
    loop {
        let noneven = (0..parts.classes.len()).find(|&j| parts.induced_odd_vertex(j).is_some());
        if let Some(j) = noneven {
            parts.split_class(j)?;
            continue;
        }
        if parts.is_aligned() {
            break;
        }
        let aligned = left_align(g, &parts.to_partition(n)?)?;
        parts = Parts::new(&adj, &aligned);
    }
    let out = parts.to_partition(n)?;
    if out.len() <= input_len {
        return Err(Error::Internal(
            "improvement step failed to add a class".into(),
        ));
    }
    debug_assert!(verify_good_partition(g, &out)?);
    Ok(Some(out))
}

/// Find at least k+2 pairwise equivalent first-class vertices: either equal
/// open neighbourhoods (d-kind, forces non-adjacency) or equal closed
/// neighbourhoods (c-kind, forces adjacency). Buckets every first-class vertex
/// by both signatures and returns the largest bucket, preferring d on ties,
/// then the bucket with the smallest member. Returns None if every bucket is
/// smaller than k+2, which a non-improvable partition with a large first class
/// only exhibits in the even-graph case handled by the kernel driver.
pub fn find_equivalence_witness(
    g: &MultiGraph,
    p: &OrderedPartition,
    k: usize,
) -> Result<Option<EquivalenceWitness>> {
    if !verify_good_partition(g, p)? || !is_left_aligned(p) || !is_maximal_partition(g, p) {
        return Err(Error::Precondition(
            "witness search needs a good, maximal, left-aligned partition".to_string(),
        ));
    }
    if p.len() > k {
        return Err(Error::Precondition(
            "witness search expects fewer than k classes".to_string(),
        ));
    }
    if p.class(0).len() < 4 * k + 1 {
        return Err(Error::Precondition(format!(
            "witness search needs a first class of size at least {}",
            4 * k + 1
        )));
    }
    if improve_once(g, p)?.is_some() {
        return Err(Error::Precondition(
            "witness search expects a non-improvable partition".to_string(),
        ));
    }
    let adj = ParityAdj::new(g);
    let parts = Parts::new(&adj, p);
    let mut open: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut closed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &v in &parts.classes[0] {
        let sig = adj.nbr[v].clone();
        open.entry(sig.clone()).or_default().push(v);
        let mut csig = sig;
        csig.push(v);
        csig.sort_unstable();
        closed.entry(csig).or_default().push(v);
    }
    let mut best: Option<EquivalenceWitness> = None;
    for (kind, buckets) in [(WitnessKind::D, &open), (WitnessKind::C, &closed)] {
        for members in buckets.values() {
            let better = match &best {
                None => true,
                Some(b) => {
                    members.len() > b.members.len()
                        || (members.len() == b.members.len() && members[0] < b.members[0])
                }
            };
            if better {
                best = Some(EquivalenceWitness {
                    kind,
                    members: members.clone(),
                });
            }
        }
    }
    match best {
        Some(w) if w.members.len() >= k + 2 => Ok(Some(w)),
        _ => Ok(None),
    }
}

/// One recorded deletion performed by `kernelize`: an even-sized subset of a
/// pairwise equivalent witness bucket, removed without changing maxdc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub vertices: Vec<usize>,
    pub kind: WitnessKind,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelResult {
    /// A good partition of the whole input with exactly k classes.
    Partition(OrderedPartition),
    /// Remaining vertices (original ids) after the recorded removals, with
    /// |kernel| <= 6k, except that an even remainder kernelizes to its lowest
    /// vertex (maxdc is then 1 regardless of size).
    Kernel {
        kernel: Vec<usize>,
        removals: Vec<Removal>,
    },
}

/// Shrink the k-partition question to a kernel of at most 6k vertices, or
/// answer it outright with a k-class partition. Loop: run the greedy
/// partition, improve while possible; k or more classes fold into an exact
/// k-partition (leading classes merge freely). Otherwise, once the graph is
/// bigger than 6k, the stuck partition has a first class of size >= 4k+1 and
/// yields at least k+2 equivalent vertices; deleting an even-sized batch
/// (keeping at least k of them, and no more than the excess over 6k) preserves
/// maxdc. Deleted vertices re-enter any good partition through its first
/// class: equivalent pairs shift every later cut by an even amount.
pub fn kernelize(g: &MultiGraph, k: usize) -> Result<KernelResult> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if k == 1 {
        let p = OrderedPartition::new(n, vec![VertexSet::full(n)])?;
        return Ok(KernelResult::Partition(p));
    }
    let mut alive = VertexSet::full(n);
    let mut removals: Vec<Removal> = Vec::new();
    loop {
        let (h, old_ids) = g.induced(&alive);
        let mut p = greedy_maximal_partition(&h)?;
        while p.len() < k {
            match improve_once(&h, &p)? {
                Some(q) => p = q,
                None => break,
            }
        }
        if p.len() >= k {
            // Merge the leading classes down to exactly k, lift to original
            // ids and put every removed vertex back into the first class.
            let classes = p.to_vecs();
            let lead = classes.len() - k + 1;
            let mut first: Vec<usize> = classes[..lead]
                .iter()
                .flatten()
                .map(|&v| old_ids[v])
                .collect();
            for r in &removals {
                first.extend_from_slice(&r.vertices);
            }
            first.sort_unstable();
            let mut lifted = vec![first];
            for class in &classes[lead..] {
                lifted.push(class.iter().map(|&v| old_ids[v]).collect());
            }
            let out = OrderedPartition::from_vecs(n, lifted)?;
            if !verify_good_partition(g, &out)? {
                return Err(Error::Internal(
                    "lifted partition failed verification".into(),
                ));
            }
            return Ok(KernelResult::Partition(out));
        }
        if alive.len() <= 6 * k {
            return Ok(KernelResult::Kernel {
                kernel: alive.to_vec(),
                removals,
            });
        }
        match find_equivalence_witness(&h, &p, k)? {
            Some(w) => {
                let t = w.members.len();
                let excess = alive.len() - 6 * k;
                let mut take = (t - k).min(excess);
                take &= !1;
                if take == 0 {
                    take = 2;
                }
                let removed: Vec<usize> =
                    w.members[..take].iter().map(|&v| old_ids[v]).collect();
                for &v in &removed {
                    alive.remove(v);
                }
                removals.push(Removal {
                    vertices: removed,
                    kind: w.kind,
                    witness: w.members.iter().map(|&v| old_ids[v]).collect(),
                });
            }
            None => {
                // No large bucket. The only stuck shape without one is an even
                // graph (single-class greedy output), where maxdc is 1 < k and
                // a single vertex already decides the question.
                if h.is_even_graph() {
                    let lowest = alive.iter().next().expect("nonempty graph");
                    return Ok(KernelResult::Kernel {
                        kernel: vec![lowest],
                        removals,
                    });
                }
                return Err(Error::Internal(
                    "no equivalence witness on a non-even graph".into(),
                ));
            }
        }
    }
}

/// Kernel-first decision: kernelize, solve the kernel exactly, lift the
/// partition back through the recorded removals (each removed batch joins the
/// first class). Returns a verified good k-partition of the input, or None.
pub fn fpt_kdc(g: &MultiGraph, k: usize) -> Result<Option<OrderedPartition>> {
    match kernelize(g, k)? {
        KernelResult::Partition(p) => Ok(Some(p)),
        KernelResult::Kernel { kernel, removals } => {
            let keep = VertexSet::from_iter(g.n(), kernel.iter().copied())?;
            let (hk, old_ids) = g.induced(&keep);
            if k > hk.n() {
                return Ok(None);
            }
            match recursive_kdc(&hk, k)? {
                None => Ok(None),
                Some(pk) => {
                    let classes = pk.to_vecs();
                    let mut first: Vec<usize> =
                        classes[0].iter().map(|&v| old_ids[v]).collect();
                    for r in &removals {
                        first.extend_from_slice(&r.vertices);
                    }
                    first.sort_unstable();
                    let mut lifted = vec![first];
                    for class in &classes[1..] {
                        lifted.push(class.iter().map(|&v| old_ids[v]).collect());
                    }
                    let out = OrderedPartition::from_vecs(g.n(), lifted)?;
                    if !verify_good_partition(g, &out)? {
                        return Err(Error::Internal(
                            "lifted kernel partition failed verification".into(),
                        ));
                    }
                    Ok(Some(out))
                }
            }
        }
    }
}

/// Largest k with a good k-partition. Uses the subset DP when it fits,
/// otherwise walks k upwards through the kernel driver (which needs kernels
/// of at most 32 vertices, so large graphs must resolve each step through
/// partitions or stay within 6k <= 32).
pub fn maxdc(g: &MultiGraph) -> Result<MaxdcResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n <= MAXDC_ORACLE_LIMIT {
        return maxdc_oracle(g);
    }
    if g.is_even_graph() {
        return Ok(MaxdcResult {
            maxdc: 1,
            contractions_needed: n - 1,
        });
    }
    let mut k = 2;
    loop {
        if k > n || fpt_kdc(g, k)?.is_none() {
            let maxdc = k - 1;
            return Ok(MaxdcResult {
                maxdc,
                contractions_needed: n - maxdc,
            });
        }
        k += 1;
    }
}
