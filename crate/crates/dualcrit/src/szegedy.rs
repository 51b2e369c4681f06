//! Randomized dual-criticality test via determinants of cycle-intersection
//! matrices over GF(2^64), plus the audit harness that measures it against
//! the exact decider.
//!
//! Given a spanning tree and the non-tree edges 1..q, entry (i, j) of the
//! intersection matrix is the sum of one variable per tree edge shared by
//! the fundamental cycles of non-tree edges i and j. Two diagonal
//! conventions are implemented: the literal diagonal (cycle i's own tree
//! edges) and the identically zero diagonal. Whether the determinant
//! vanishes identically tracks dual-criticality for graphs that survive the
//! cheap structural filters; the test evaluates the determinant at uniform
//! random points, so a nonzero value is a certificate and "zero at every
//! trial" is correct with quantified error probability (Schwartz-Zippel:
//! at most (q / 2^64) per trial).
//!
//! The filters matter: graphs assembled from even-cut pieces across a
//! bridge can have a literal-diagonal determinant that is not identically
//! zero despite not being dual-critical. The audit reports every such
//! disagreement rather than hiding it.

use crate::exact::is_dual_critical;
use crate::gf64::Gf64;
use crate::graph::{fundamental_cycle_tree_edges, normalize_to_simple, spanning_tree, MultiGraph};
use crate::{enumerate, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Diagonal entry (i, i) sums cycle i's own tree edges.
    LiteralDiagonal,
    /// Diagonal identically zero.
    ZeroDiagonal,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::LiteralDiagonal => "literal-diagonal",
            Variant::ZeroDiagonal => "zero-diagonal",
        })
    }
}

/// Symmetric q x q matrix whose entries are formal sums of tree-edge
/// variables, stored as sorted edge-id lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub q: usize,
    pub variant: Variant,
    /// Spanning tree edge ids (the variables), ascending.
    pub tree: Vec<usize>,
    /// Non-tree edge ids in ascending order; row i belongs to nontree[i].
    pub nontree: Vec<usize>,
    /// cells[i][j]: sorted tree-edge ids whose variables sum to entry (i, j).
    pub cells: Vec<Vec<Vec<usize>>>,
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Build the cycle-intersection matrix of `g` for a given spanning tree.
/// The theory behind the verdicts assumes a simple graph (normalize first);
/// the construction itself tolerates any connected multigraph.
pub fn intersection_matrix(
    g: &MultiGraph,
    tree: &[usize],
    variant: Variant,
) -> Result<IntersectionMatrix> {
    let mut sorted_tree = tree.to_vec();
    sorted_tree.sort_unstable();
    let nontree: Vec<usize> = (0..g.m()).filter(|e| !sorted_tree.contains(e)).collect();
    let cycles: Vec<Vec<usize>> = nontree
        .iter()
        .map(|&e| fundamental_cycle_tree_edges(g, tree, e))
        .collect::<Result<_>>()?;
    let q = nontree.len();
    let mut cells = vec![vec![Vec::new(); q]; q];
    for i in 0..q {
        for j in 0..q {
            if i == j {
                if variant == Variant::LiteralDiagonal {
                    cells[i][i] = cycles[i].clone();
                }
            } else {
                cells[i][j] = sorted_intersection(&cycles[i], &cycles[j]);
            }
        }
    }
    Ok(IntersectionMatrix {
        q,
        variant,
        tree: sorted_tree,
        nontree,
        cells,
    })
}

/// Evaluate the determinant at a point. The assignment must cover every
/// tree edge.
pub fn evaluate_determinant(
    m: &IntersectionMatrix,
    assignment: &BTreeMap<usize, u64>,
) -> Result<Gf64> {
    for &e in &m.tree {
        if !assignment.contains_key(&e) {
            return Err(Error::Precondition(format!(
                "assignment missing tree edge {e}"
            )));
        }
    }
    let mut vals = vec![vec![Gf64::ZERO; m.q]; m.q];
    for i in 0..m.q {
        for j in 0..m.q {
            let mut s = 0u64;
            for e in &m.cells[i][j] {
                s ^= assignment[e];
            }
            vals[i][j] = Gf64(s);
        }
    }
    Ok(det_in_place(&mut vals))
}

/// Gaussian elimination over GF(2^64); row swaps are free (characteristic 2).
fn det_in_place(m: &mut [Vec<Gf64>]) -> Gf64 {
    let q = m.len();
    let mut det = Gf64::ONE;
    for col in 0..q {
        let Some(pivot) = (col..q).find(|&r| !m[r][col].is_zero()) else {
            return Gf64::ZERO;
        };
        m.swap(col, pivot);
        let p = m[col][col];
        det *= p;
        let inv = p.inverse();
        for r in col + 1..q {
            let factor = m[r][col] * inv;
            if factor.is_zero() {
                continue;
            }
            for c in col..q {
                let sub = m[col][c] * factor;
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Outcome of the randomized determinant evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DetTestResult {
    /// The determinant is provably not identically zero; the witness maps
    /// each tree edge to the field element (raw bits) that exhibited it.
    NonzeroDet {
        trial: usize,
        witness: BTreeMap<usize, u64>,
    },
    /// Every trial evaluated to zero. `log2_error_bound` bounds the
    /// probability that the determinant is nonetheless nonzero, strictly
    /// decreasing in the trial count.
    ZeroDetWhp { trials: usize, log2_error_bound: f64 },
}

impl DetTestResult {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, DetTestResult::NonzeroDet { .. })
    }

    /// Error probability as a plain number, clamped to [0, 1]. Underflows to
    /// zero quickly; compare `log2_error_bound` for monotonicity.
    pub fn error_bound(&self) -> f64 {
        match self {
            DetTestResult::NonzeroDet { .. } => 0.0,
            DetTestResult::ZeroDetWhp {
                log2_error_bound, ..
            } => log2_error_bound.exp2().clamp(0.0, 1.0),
        }
    }
}

/// Evaluate the determinant at `trials` independent uniform points. Trial
/// `t` draws from ChaCha8 stream `t` of `seed`, so results are reproducible
/// and extending the trial count reuses earlier draws.
pub fn randomized_det_test(m: &IntersectionMatrix, seed: u64, trials: usize) -> Result<DetTestResult> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial required".into()));
    }
    if m.q == 0 {
        // Empty determinant is 1: a tree is handled by structure alone.
        return Ok(DetTestResult::NonzeroDet {
            trial: 0,
            witness: BTreeMap::new(),
        });
    }
    let mut vals = vec![vec![Gf64::ZERO; m.q]; m.q];
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut assignment = BTreeMap::new();
        for &e in &m.tree {
            assignment.insert(e, rng.gen::<u64>());
        }
        for i in 0..m.q {
            for j in 0..m.q {
                let mut s = 0u64;
                for e in &m.cells[i][j] {
                    s ^= assignment[e];
                }
                vals[i][j] = Gf64(s);
            }
        }
        if !det_in_place(&mut vals).is_zero() {
            return Ok(DetTestResult::NonzeroDet {
                trial,
                witness: assignment,
            });
        }
    }
    let q = m.q as f64;
    Ok(DetTestResult::ZeroDetWhp {
        trials,
        log2_error_bound: trials as f64 * (q.log2() - 64.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FalseReason {
    Disconnected,
    BadParity,
    AllDegreesEven,
}

/// Verdict of the full pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SzegedyVerdict {
    /// Dual-critical. Trees and single vertices need no determinant; the
    /// evidence is absent for them.
    True { evidence: Option<DetTestResult> },
    /// Not dual-critical, by a structural condition checked exactly.
    FalseCertain { reason: FalseReason },
    /// Not dual-critical with high probability: the determinant vanished at
    /// every sampled point.
    FalseWhp { evidence: DetTestResult },
}

impl SzegedyVerdict {
    pub fn as_bool(&self) -> bool {
        matches!(self, SzegedyVerdict::True { .. })
    }
}

/// Randomized dual-criticality test. Normalizes to a simple graph (a
/// dual-criticality-preserving rewrite), applies the exact structural
/// filters, then runs the determinant test on what remains.
pub fn szegedy_is_dc(
    g: &MultiGraph,
    variant: Variant,
    seed: u64,
    trials: usize,
) -> Result<SzegedyVerdict> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let s = normalize_to_simple(g);
    if !s.is_connected()? {
        return Ok(SzegedyVerdict::FalseCertain {
            reason: FalseReason::Disconnected,
        });
    }
    if !s.good_parity() {
        return Ok(SzegedyVerdict::FalseCertain {
            reason: FalseReason::BadParity,
        });
    }
    if s.n() >= 2 && s.is_even_graph() {
        return Ok(SzegedyVerdict::FalseCertain {
            reason: FalseReason::AllDegreesEven,
        });
    }
    if s.n() == 1 {
        return Ok(SzegedyVerdict::True { evidence: None });
    }
    let tree = spanning_tree(&s)?;
    let matrix = intersection_matrix(&s, &tree, variant)?;
    if matrix.q == 0 {
        // Spanning tree with an odd-degree vertex: dual-critical outright.
        return Ok(SzegedyVerdict::True { evidence: None });
    }
    match randomized_det_test(&matrix, seed, trials)? {
        r @ DetTestResult::NonzeroDet { .. } => Ok(SzegedyVerdict::True { evidence: Some(r) }),
        r @ DetTestResult::ZeroDetWhp { .. } => Ok(SzegedyVerdict::FalseWhp { evidence: r }),
    }
}

/// One graph-variant pair where the randomized verdict disagreed with the
/// exact decider.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditDisagreement {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub variant: Variant,
    pub exact: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantTally {
    pub variant: Variant,
    pub graphs: u64,
    pub agreements: u64,
    /// Verdict true, exact false: unsound accepts.
    pub false_trues: u64,
    /// Verdict false, exact true: missed graphs.
    pub false_falses: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SzegedyAuditReport {
    pub n_max: usize,
    pub seed: u64,
    pub trials: usize,
    pub connected_graphs: u64,
    pub tallies: Vec<VariantTally>,
    pub disagreements: Vec<AuditDisagreement>,
}

impl SzegedyAuditReport {
    /// True when every disagreement is a recorded entry and no unsound
    /// accept goes unlisted; trivially true when there are none.
    pub fn disagreements_fully_listed(&self) -> bool {
        let tallied: u64 = self
            .tallies
            .iter()
            .map(|t| t.false_trues + t.false_falses)
            .sum();
        tallied == self.disagreements.len() as u64
    }
}

/// Compare the randomized test against the exact decider on every connected
/// labelled simple graph with up to `n_max` vertices (`n_max` capped at 7).
/// The per-graph seed mixes the enumeration index so reruns are identical.
pub fn audit_against_exact(
    n_max: usize,
    variants: &[Variant],
    seed: u64,
    trials: usize,
) -> Result<SzegedyAuditReport> {
    if n_max == 0 {
        return Err(Error::EmptyGraph);
    }
    if n_max > 7 {
        return Err(Error::TooLarge {
            what: "determinant test audit",
            n: n_max,
            limit: 7,
        });
    }
    struct Acc {
        graphs: u64,
        per_variant: Vec<(u64, u64, u64)>, // (agreements, false_trues, false_falses)
        disagreements: Vec<AuditDisagreement>,
    }
    let zero = |k: usize| Acc {
        graphs: 0,
        per_variant: vec![(0, 0, 0); k],
        disagreements: Vec::new(),
    };
    let merge = |mut a: Acc, b: Acc| {
        a.graphs += b.graphs;
        for (x, y) in a.per_variant.iter_mut().zip(&b.per_variant) {
            x.0 += y.0;
            x.1 += y.1;
            x.2 += y.2;
        }
        a.disagreements.extend(b.disagreements);
        a
    };

    let mut total = zero(variants.len());
    for n in 1..=n_max {
        let pairs = enumerate::edge_pairs(n);
        let masks = enumerate::graph_count(n);
        // Shard the mask space so rayon can split it.
        const SHARD: u64 = 1 << 14;
        let shards: Vec<u64> = (0..masks.div_ceil(SHARD)).collect();
        let acc = shards
            .par_iter()
            .map(|&shard| {
                let mut acc = zero(variants.len());
                let lo = shard * SHARD;
                let hi = (lo + SHARD).min(masks);
                for mask in lo..hi {
                    if !enumerate::mask_is_connected(n, &pairs, mask) {
                        continue;
                    }
                    let g = enumerate::graph_from_mask(n, &pairs, mask);
                    let exact = is_dual_critical(&g).expect("within exact limits");
                    acc.graphs += 1;
                    let graph_seed =
                        seed ^ (mask.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ n as u64);
                    for (vi, &variant) in variants.iter().enumerate() {
                        let verdict = szegedy_is_dc(&g, variant, graph_seed, trials)
                            .expect("nonempty graph");
                        let said = verdict.as_bool();
                        if said == exact {
                            acc.per_variant[vi].0 += 1;
                        } else {
                            if said {
                                acc.per_variant[vi].1 += 1;
                            } else {
                                acc.per_variant[vi].2 += 1;
                            }
                            acc.disagreements.push(AuditDisagreement {
                                n,
                                edges: g.edges().to_vec(),
                                variant,
                                exact,
                                verdict: match verdict {
                                    SzegedyVerdict::True { .. } => "true".into(),
                                    SzegedyVerdict::FalseCertain { .. } => "false-certain".into(),
                                    SzegedyVerdict::FalseWhp { .. } => "false-whp".into(),
                                },
                            });
                        }
                    }
                }
                acc
            })
            .reduce(|| zero(variants.len()), merge);
        total = merge(total, acc);
    }

    Ok(SzegedyAuditReport {
        n_max,
        seed,
        trials,
        connected_graphs: total.graphs,
        tallies: variants
            .iter()
            .zip(&total.per_variant)
            .map(|(&variant, &(a, ft, ff))| VariantTally {
                variant,
                graphs: total.graphs,
                agreements: a,
                false_trues: ft,
                false_falses: ff,
            })
            .collect(),
        disagreements: total.disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Symbolic determinant over GF(2)[x_e]: polynomials are XOR-sets of
    /// monomials, a monomial is a sorted multiset of edge ids. Exponential,
    /// for q <= 3 only; an independent check of matrix construction and of
    /// identically-zero claims.
    type Poly = HashSet<Vec<usize>>;

    fn poly_xor(mut a: Poly, b: Poly) -> Poly {
        for m in b {
            if !a.remove(&m) {
                a.insert(m);
            }
        }
        a
    }

    fn poly_mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for x in a {
            for y in b {
                let mut m = x.clone();
                m.extend(y);
                m.sort_unstable();
                if !out.remove(&m) {
                    out.insert(m);
                }
            }
        }
        out
    }

    fn entry_poly(m: &IntersectionMatrix, i: usize, j: usize) -> Poly {
        m.cells[i][j].iter().map(|&e| vec![e]).collect()
    }

    fn symbolic_det(m: &IntersectionMatrix) -> Poly {
        let q = m.q;
        let mut det = Poly::new();
        let mut perm: Vec<usize> = (0..q).collect();
        // Leibniz expansion; signs are irrelevant in characteristic 2.
        fn go(perm: &mut Vec<usize>, k: usize, m: &IntersectionMatrix, det: &mut Poly) {
            if k == perm.len() {
                let mut term: Poly = [vec![]].into_iter().collect();
                for (i, &j) in perm.iter().enumerate() {
                    term = poly_mul(&term, &entry_poly(m, i, j));
                }
                *det = poly_xor(std::mem::take(det), term);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                go(perm, k + 1, m, det);
                perm.swap(k, i);
            }
        }
        go(&mut perm, 0, m, &mut det);
        det
    }

    fn matrix_for(g: &MultiGraph, variant: Variant) -> IntersectionMatrix {
        let tree = spanning_tree(g).unwrap();
        intersection_matrix(g, &tree, variant).unwrap()
    }

    #[test]
    fn k23_matrix_structure() {
        let m = matrix_for(&corpus::k23(), Variant::LiteralDiagonal);
        assert_eq!(m.q, 2);
        assert_eq!(m.tree, vec![0, 1, 2, 3]);
        assert_eq!(m.nontree, vec![4, 5]);
        assert_eq!(m.cells[0][0], vec![0, 1, 3]);
        assert_eq!(m.cells[1][1], vec![0, 2, 3]);
        assert_eq!(m.cells[0][1], vec![0, 3]);
        assert_eq!(m.cells[1][0], vec![0, 3]);
        let z = matrix_for(&corpus::k23(), Variant::ZeroDiagonal);
        assert!(z.cells[0][0].is_empty());
        assert_eq!(z.cells[0][1], vec![0, 3]);
    }

    #[test]
    fn symbolic_zero_claims() {
        // K4 under the Kruskal (star) tree: identically zero either way.
        let k4 = corpus::complete(4);
        for variant in [Variant::LiteralDiagonal, Variant::ZeroDiagonal] {
            let m = matrix_for(&k4, variant);
            assert!(symbolic_det(&m).is_empty(), "{variant}");
        }
        // K4 under the path tree 0-1-2-3 (edges 0, 3, 5): the zero diagonal
        // still vanishes (odd-dimension alternating matrix), but the literal
        // diagonal does not — its determinant is the single monomial
        // x0 x3 x5, so the identically-zero property is tree-dependent.
        let path_tree = vec![0, 3, 5];
        let m = intersection_matrix(&k4, &path_tree, Variant::ZeroDiagonal).unwrap();
        assert!(symbolic_det(&m).is_empty());
        let m = intersection_matrix(&k4, &path_tree, Variant::LiteralDiagonal).unwrap();
        let det = symbolic_det(&m);
        assert_eq!(det, [vec![0, 3, 5]].into_iter().collect::<Poly>());
        // Bridge of two triangles: literal diagonal is NOT identically zero
        // (the unsound accept the audit must report); zero diagonal is zero.
        let bridge = corpus::two_triangles_bridge();
        let lit = matrix_for(&bridge, Variant::LiteralDiagonal);
        assert!(!symbolic_det(&lit).is_empty());
        let zd = matrix_for(&bridge, Variant::ZeroDiagonal);
        assert!(symbolic_det(&zd).is_empty());
        // K2,3 is dual-critical: both variants nonzero.
        for variant in [Variant::LiteralDiagonal, Variant::ZeroDiagonal] {
            let m = matrix_for(&corpus::k23(), variant);
            assert!(!symbolic_det(&m).is_empty(), "{variant}");
        }
        // K33 is dual-critical, yet its literal determinant vanishes
        // identically: the literal variant misses graphs as well as
        // over-accepting them. The zero diagonal gets it right.
        let m = matrix_for(&corpus::k33(), Variant::LiteralDiagonal);
        assert!(symbolic_det(&m).is_empty());
        let m = matrix_for(&corpus::k33(), Variant::ZeroDiagonal);
        assert!(!symbolic_det(&m).is_empty());
    }

    #[test]
    fn randomized_matches_symbolic_on_small_graphs() {
        for (name, g, _) in corpus::named_with_dc_status() {
            if g.n() < 2 || !g.is_connected().unwrap() {
                continue;
            }
            let tree = spanning_tree(&g).unwrap();
            for variant in [Variant::LiteralDiagonal, Variant::ZeroDiagonal] {
                let m = intersection_matrix(&g, &tree, variant).unwrap();
                if m.q > 3 {
                    continue;
                }
                let sym_zero = symbolic_det(&m).is_empty();
                let res = randomized_det_test(&m, 7, 40).unwrap();
                assert_eq!(
                    !res.is_nonzero(),
                    sym_zero,
                    "{name} {variant}: randomized vs symbolic"
                );
            }
        }
    }

    #[test]
    fn witness_reevaluates_nonzero() {
        let m = matrix_for(&corpus::k23(), Variant::ZeroDiagonal);
        match randomized_det_test(&m, 123, 40).unwrap() {
            DetTestResult::NonzeroDet { witness, .. } => {
                assert!(!evaluate_determinant(&m, &witness).unwrap().is_zero());
            }
            other => panic!("expected a nonzero witness, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_verdicts_on_corpus() {
        // The zero diagonal agrees with ground truth on the whole corpus.
        // The literal diagonal disagrees in both directions on exactly
        // these members: it accepts the bridge graph and misses W4 and K33.
        for (name, g, expected) in corpus::named_with_dc_status() {
            let zd = szegedy_is_dc(&g, Variant::ZeroDiagonal, 42, 40).unwrap();
            assert_eq!(zd.as_bool(), expected, "{name} zero-diagonal");
            let lit = szegedy_is_dc(&g, Variant::LiteralDiagonal, 42, 40).unwrap();
            let lit_expected = match name {
                "two-triangles-bridge" => true,
                "w4" | "k33" => false,
                _ => expected,
            };
            assert_eq!(lit.as_bool(), lit_expected, "{name} literal-diagonal");
        }
    }

    #[test]
    fn pipeline_reasons() {
        let disconnected = MultiGraph::new(3, vec![(0, 1)]).unwrap();
        assert!(matches!(
            szegedy_is_dc(&disconnected, Variant::ZeroDiagonal, 1, 5).unwrap(),
            SzegedyVerdict::FalseCertain {
                reason: FalseReason::Disconnected
            }
        ));
        assert!(matches!(
            szegedy_is_dc(&corpus::complete(4), Variant::ZeroDiagonal, 1, 5).unwrap(),
            SzegedyVerdict::FalseCertain {
                reason: FalseReason::BadParity
            }
        ));
        assert!(matches!(
            szegedy_is_dc(&corpus::bowtie(), Variant::ZeroDiagonal, 1, 5).unwrap(),
            SzegedyVerdict::FalseCertain {
                reason: FalseReason::AllDegreesEven
            }
        ));
        // Trees are certified without a determinant.
        assert!(matches!(
            szegedy_is_dc(&corpus::path(4), Variant::ZeroDiagonal, 1, 5).unwrap(),
            SzegedyVerdict::True { evidence: None }
        ));
    }

    #[test]
    fn normalization_lets_multigraphs_through() {
        // Theta3 normalizes to K2: dual-critical.
        let v = szegedy_is_dc(&corpus::theta3(), Variant::ZeroDiagonal, 9, 20).unwrap();
        assert!(v.as_bool());
        // A loop plus triangle normalizes to an even simple graph.
        let g = MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 0)]).unwrap();
        let v = szegedy_is_dc(&g, Variant::ZeroDiagonal, 9, 20).unwrap();
        assert!(!v.as_bool());
    }

    #[test]
    fn error_bound_strictly_decreases() {
        let m = matrix_for(&corpus::complete(4), Variant::ZeroDiagonal);
        let mut last = f64::INFINITY;
        for trials in 1..=50 {
            match randomized_det_test(&m, 5, trials).unwrap() {
                DetTestResult::ZeroDetWhp {
                    log2_error_bound, ..
                } => {
                    assert!(log2_error_bound < last, "trials = {trials}");
                    last = log2_error_bound;
                }
                _ => panic!("K4 determinant is identically zero"),
            }
        }
    }

    #[test]
    fn audit_small_is_clean_for_zero_diagonal() {
        let report = audit_against_exact(5, &[Variant::ZeroDiagonal], 99, 12).unwrap();
        assert_eq!(report.connected_graphs, 1 + 1 + 4 + 38 + 728);
        assert_eq!(report.tallies[0].false_trues, 0);
        assert_eq!(report.tallies[0].false_falses, 0);
        assert!(report.disagreements.is_empty());
        assert!(report.disagreements_fully_listed());
    }

    #[test]
    fn audit_finds_literal_diagonal_disagreements_at_n6() {
        let report = audit_against_exact(6, &[Variant::LiteralDiagonal], 7, 8).unwrap();
        // Both failure directions exist at n = 6: unsound accepts (the
        // bridge of two triangles and relabelings) and missed graphs (W4,
        // K33 and friends). Every one must be listed.
        assert!(report.tallies[0].false_trues > 0);
        assert!(report.tallies[0].false_falses > 0);
        assert!(report.disagreements_fully_listed());
        for d in &report.disagreements {
            match d.verdict.as_str() {
                "true" => assert!(!d.exact),
                "false-whp" | "false-certain" => assert!(d.exact),
                other => panic!("unexpected verdict label {other}"),
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn pipeline_agrees_with_exact_zero_diagonal(
            mask in 0u64..(1 << 15),
        ) {
            // Random simple graphs on 6 vertices.
            let pairs = enumerate::edge_pairs(6);
            let g = enumerate::graph_from_mask(6, &pairs, mask);
            prop_assume!(g.is_connected().unwrap());
            let verdict = szegedy_is_dc(&g, Variant::ZeroDiagonal, mask, 24).unwrap();
            prop_assert_eq!(verdict.as_bool(), is_dual_critical(&g).unwrap());
        }
    }
}
