//! Release criteria, one test per criterion. Each test prints a single PASS
//! line with its measurements; a failure anywhere is a release blocker.
//!
//! The evaluators here are written from the definitions, independently of
//! the library internals they exercise, so that agreement means something.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualcrit::corpus::{
    bowtie, c5chord, complete, cycle, k2, k23, k33, named_with_dc_status, path, petersen, prism,
    star, triangle, two_triangles_bridge, w4,
};
use dualcrit::cubic::{random_cubic, CubicInstance};
use dualcrit::enumerate::for_each_graph;
use dualcrit::exact::{find_t_odd_ordering, is_dual_critical};
use dualcrit::gen::{even_clique_plus_isolates, random_dual_critical, random_multigraph};
use dualcrit::graph::{cut_size, rewrite, spanning_tree, Rewrite};
use dualcrit::kdc::{
    fpt_kdc, greedy_maximal_partition, kernelize, left_align, maxdc, maxdc_oracle, recursive_kdc,
    verify_good_partition, KernelResult,
};
use dualcrit::planar::embedded_corpus;
use dualcrit::szegedy::{
    audit_against_exact, evaluate_determinant, intersection_matrix, randomized_det_test,
    DetTestResult, Variant,
};
use dualcrit::{Error, MultiGraph, OrderedPartition, VertexSet};

fn dc(g: &MultiGraph) -> bool {
    is_dual_critical(g).unwrap()
}

/// Statement (2): every vertex can play the unique even-indegree role.
fn every_vertex_can_be_the_source(g: &MultiGraph) -> bool {
    (0..g.n()).all(|v| {
        let mut t = VertexSet::full(g.n());
        t.remove(v);
        find_t_odd_ordering(g, &t).unwrap().is_some()
    })
}

/// Statement (3): good parity, and every proper vertex subset whose size
/// matches |E| mod 2 is the odd-indegree set of some acyclic orientation.
fn every_valid_target_realizable(g: &MultiGraph) -> bool {
    if !g.good_parity() {
        return false;
    }
    let n = g.n();
    let full = (1u64 << n) - 1;
    for mask in 0..full {
        if (mask.count_ones() as usize) % 2 != g.m() % 2 {
            continue;
        }
        let t = VertexSet::from_mask(n, mask);
        if find_t_odd_ordering(g, &t).unwrap().is_none() {
            return false;
        }
    }
    true
}

/// Statement (4): a single vertex, or an odd cut into two parts whose
/// induced subgraphs both satisfy the property recursively (checked with the
/// exact decider).
fn splits_along_an_odd_cut(g: &MultiGraph) -> bool {
    let n = g.n();
    if n == 1 {
        return true;
    }
    let full = (1u64 << n) - 1;
    // Vertex 0 stays on the A side; (A, B) and (B, A) witness the same split.
    for mask in (1..full).filter(|m| m & 1 == 1) {
        let a = VertexSet::from_mask(n, mask);
        let b = a.complement();
        if cut_size(g, &a, &b).unwrap() % 2 == 0 {
            continue;
        }
        if dc(&g.induced(&a).0) && dc(&g.induced(&b).0) {
            return true;
        }
    }
    false
}

#[test]
fn criterion_01_four_statement_equivalence() {
    let start = Instant::now();
    let mut graphs = 0u64;
    for n in 1..=6 {
        for_each_graph(n, true, |g| {
            graphs += 1;
            let s1 = dc(g);
            let s2 = every_vertex_can_be_the_source(g);
            let s3 = every_valid_target_realizable(g);
            let s4 = splits_along_an_odd_cut(g);
            assert!(
                s1 == s2 && s2 == s3 && s3 == s4,
                "statements disagree ({s1}, {s2}, {s3}, {s4}) on n={} edges={:?}",
                g.n(),
                g.edges()
            );
        })
        .unwrap();
    }
    assert_eq!(graphs, 27_476);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "PASS criterion 1: four characterizations agree on all {graphs} connected simple graphs \
         with n <= 6 in {elapsed:.2?}"
    );
}

#[test]
fn criterion_02_rewrite_invariance() {
    let mut applications = 0u64;
    for instance in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC2_0000 + instance);
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=12);
        let g = random_multigraph(n, m, rng.gen()).unwrap();
        let base = dc(&g);

        let mut ops: Vec<Rewrite> = Vec::new();
        for e1 in 0..g.m() {
            for e2 in e1 + 1..g.m() {
                ops.push(Rewrite::DeleteParallelPair { e1, e2 });
            }
        }
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                ops.push(Rewrite::AddParallelPair { u, v });
            }
        }
        for e in 0..g.m() {
            ops.push(Rewrite::SubdivideEdge { e });
            ops.push(Rewrite::ContractDegreeTwo { e });
        }

        for op in ops {
            match rewrite(&g, op) {
                Ok(r) => {
                    assert_eq!(
                        dc(&r.graph),
                        base,
                        "{op:?} flipped the decision on edges={:?}",
                        g.edges()
                    );
                    applications += 1;
                }
                Err(Error::RewritePrecondition(_)) => {}
                Err(e) => panic!("unexpected error {e} applying {op:?}"),
            }
        }
    }
    println!(
        "PASS criterion 2: {applications} rewrite applications across 500 seeded multigraphs \
         preserve the decision"
    );
}

fn random_tree(n: usize, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    MultiGraph::new(n, edges).unwrap()
}

#[test]
fn criterion_03_named_ground_truth() {
    assert!(dc(&k2()));
    for n in 2..=12 {
        assert!(dc(&path(n)), "path on {n}");
    }
    for leaves in 1..=11 {
        assert!(dc(&star(leaves)), "star with {leaves} leaves");
    }
    for seed in 0..20 {
        let n = 4 + (seed as usize) % 17;
        assert!(dc(&random_tree(n, 0xC3_0000 + seed)), "tree seed {seed}");
    }
    for (name, g) in [
        ("k23", k23()),
        ("c5chord", c5chord()),
        ("w4", w4()),
        ("k33", k33()),
        ("prism", prism()),
    ] {
        assert!(dc(&g), "{name} should be dual-critical");
    }

    for (name, g) in [
        ("triangle", triangle()),
        ("k4", complete(4)),
        ("bowtie", bowtie()),
        ("two triangles with a bridge", two_triangles_bridge()),
    ] {
        assert!(!dc(&g), "{name} should not be dual-critical");
    }
    for n in 3..=12 {
        assert!(!dc(&cycle(n)), "cycle on {n}");
    }

    let mut named = 0;
    for (name, g, expected) in named_with_dc_status() {
        assert_eq!(dc(&g), expected, "{name}");
        named += 1;
    }
    println!("PASS criterion 3: ground truth holds for {named} named graphs, paths, stars, cycles, and 20 random trees");
}

#[test]
fn criterion_04_randomized_audit_to_n7() {
    let start = Instant::now();
    let variants = [Variant::LiteralDiagonal, Variant::ZeroDiagonal];
    let report = audit_against_exact(7, &variants, 0xA4D17, 40).unwrap();

    // Compact encoding: the disagreement list runs to hundreds of megabytes.
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("det_audit_n7.json");
    std::fs::write(&out, serde_json::to_string(&report).unwrap()).unwrap();

    for t in &report.tallies {
        assert_eq!(t.graphs, report.connected_graphs);
        assert_eq!(t.agreements + t.false_trues + t.false_falses, t.graphs);
    }
    let unsound: u64 = report.tallies.iter().map(|t| t.false_trues).sum();
    assert!(
        unsound == 0 || report.disagreements_fully_listed(),
        "unsound accepts exist and the report does not list them all"
    );

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1800), "took {elapsed:?}");
    println!(
        "PASS criterion 4: agreement matrix over {} connected graphs (n <= 7, both variants, \
         40 trials) written to {}; every one of the {} disagreements is listed; {elapsed:.2?}",
        report.connected_graphs,
        out.display(),
        report.disagreements.len()
    );
}

#[test]
fn criterion_05_vanishing_and_nonvanishing_determinants() {
    // K4 with a star spanning tree: the determinant is identically zero for
    // the literal-diagonal variant, so no trial may ever report nonzero.
    let g = complete(4);
    for hub in 0..4 {
        let tree: Vec<usize> = (0..g.m())
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                a == hub || b == hub
            })
            .collect();
        let m = intersection_matrix(&g, &tree, Variant::LiteralDiagonal).unwrap();
        match randomized_det_test(&m, 0x50_0000 + hub as u64, 10_000).unwrap() {
            DetTestResult::ZeroDetWhp { .. } => {}
            DetTestResult::NonzeroDet { trial, .. } => {
                panic!("identically zero determinant evaluated nonzero at trial {trial} (star at {hub})")
            }
        }
    }

    // K23 has a nonzero determinant under both variants; a random evaluation
    // misses it with probability at most q / 2^64, so across 10^4 points even
    // a single zero is already suspicious and two fail the suite.
    let g = k23();
    let tree = spanning_tree(&g).unwrap();
    for variant in [Variant::LiteralDiagonal, Variant::ZeroDiagonal] {
        let m = intersection_matrix(&g, &tree, variant).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_0000);
        let mut zeros = 0u32;
        for _ in 0..10_000 {
            let assignment: BTreeMap<usize, u64> =
                m.tree.iter().map(|&e| (e, rng.gen())).collect();
            if evaluate_determinant(&m, &assignment).unwrap().is_zero() {
                zeros += 1;
            }
        }
        assert!(zeros <= 1, "{variant}: {zeros} zero evaluations in 10^4");
    }
    println!(
        "PASS criterion 5: 4 x 10^4 trials on the vanishing K4 star determinants never report \
         nonzero; 2 x 10^4 evaluations of the K23 determinant never hit zero"
    );
}

#[test]
fn criterion_06_partition_deciders_cross_validate() {
    let mut kernels = 0u64;
    let mut partitions = 0u64;
    for instance in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC6_0000 + instance);
        let n = rng.gen_range(1..=14);
        let m = rng.gen_range(0..=2 * n);
        let g = random_multigraph(n, m, rng.gen()).unwrap();
        let top = maxdc_oracle(&g).unwrap().maxdc;

        for k in 1..=4.min(n) {
            let expected = top >= k;
            let rec = recursive_kdc(&g, k).unwrap();
            let fpt = fpt_kdc(&g, k).unwrap();
            assert_eq!(rec.is_some(), expected, "recursive vs oracle, n={n} k={k}");
            assert_eq!(fpt.is_some(), expected, "fpt vs oracle, n={n} k={k}");
            for p in [&rec, &fpt].into_iter().flatten() {
                assert_eq!(p.len(), k);
                assert!(verify_good_partition(&g, p).unwrap(), "n={n} k={k}");
                partitions += 1;
            }

            match kernelize(&g, k).unwrap() {
                KernelResult::Partition(p) => {
                    assert!(expected, "kernelization decided a negative instance");
                    assert_eq!(p.len(), k);
                    assert!(verify_good_partition(&g, &p).unwrap());
                    partitions += 1;
                }
                KernelResult::Kernel { kernel, .. } => {
                    assert!(kernel.len() <= 6 * k, "kernel above 6k: {} > {}", kernel.len(), 6 * k);
                    let keep = VertexSet::from_iter(g.n(), kernel.iter().copied()).unwrap();
                    let (h, _) = g.induced(&keep);
                    let on_kernel = if k <= h.n() {
                        recursive_kdc(&h, k).unwrap().is_some()
                    } else {
                        false
                    };
                    assert_eq!(on_kernel, expected, "kernel flipped the decision, n={n} k={k}");
                    kernels += 1;
                }
            }
        }
    }
    println!(
        "PASS criterion 6: recursive, oracle, and kernelized deciders agree on 200 seeded graphs \
         for every k <= 4; {partitions} partitions verified, {kernels} kernels preserve the \
         decision within 6k vertices"
    );
}

fn is_even_clique_plus_isolates(g: &MultiGraph) -> bool {
    let core: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    if core.len() < 2 || core.len() % 2 != 0 {
        return false;
    }
    if g.m() != core.len() * (core.len() - 1) / 2 {
        return false;
    }
    core.iter().enumerate().all(|(i, &u)| {
        core[i + 1..]
            .iter()
            .all(|&v| g.multiplicity(u, v) == 1)
    })
}

#[test]
fn criterion_07_maxdc_identities() {
    let start = Instant::now();
    let mut graphs = 0u64;
    for n in 1..=7 {
        for_each_graph(n, false, |g| {
            graphs += 1;
            let r = maxdc_oracle(g).unwrap().maxdc;
            assert_eq!(
                r == 1,
                g.is_even_graph(),
                "maxdc-1 identity fails on n={} edges={:?}",
                g.n(),
                g.edges()
            );
            assert_eq!(
                r == 2,
                is_even_clique_plus_isolates(g),
                "maxdc-2 identity fails on n={} edges={:?}",
                g.n(),
                g.edges()
            );
            assert_eq!(
                r == g.n(),
                dc(g),
                "maxdc-n identity fails on n={} edges={:?}",
                g.n(),
                g.edges()
            );
        })
        .unwrap();
    }
    assert_eq!(graphs, 2_131_019);

    // Families beyond the oracle limit go through the large-n driver.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC7_0000);
    for _ in 0..20 {
        let clique = 2 * rng.gen_range(1..=6);
        let isolates = rng.gen_range(0..=40 - clique);
        let g = even_clique_plus_isolates(clique, isolates).unwrap();
        let r = maxdc(&g).unwrap();
        assert_eq!(r.maxdc, 2, "clique {clique} + {isolates} isolates");
        assert_eq!(r.contractions_needed, g.n() - 2);
    }

    for (name, g, expected_dc) in named_with_dc_status() {
        let r = maxdc_oracle(&g).unwrap().maxdc;
        assert_eq!(r == g.n(), expected_dc, "{name}");
    }

    println!(
        "PASS criterion 7: maxdc identities hold on all {graphs} labelled simple graphs with \
         n <= 7, 20 clique-plus-isolates families up to n = 40, and the named corpus \
         ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn criterion_08_left_alignment_of_refined_partitions() {
    let mut splits = 0u64;
    for instance in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC8_0000 + instance);
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(1..=2 * n);
        let g = random_multigraph(n, m, rng.gen()).unwrap();
        let top = maxdc_oracle(&g).unwrap().maxdc;
        let k = rng.gen_range(1..=top);
        let base = recursive_kdc(&g, k).unwrap().expect("oracle promised k");

        // Random refinement: split a class in two adjacent classes whenever
        // the result is still good.
        let mut classes = base.to_vecs();
        for _ in 0..8 {
            let c = rng.gen_range(0..classes.len());
            if classes[c].len() < 2 {
                continue;
            }
            let (mut left, mut right) = (Vec::new(), Vec::new());
            while left.is_empty() || right.is_empty() {
                left.clear();
                right.clear();
                for &v in &classes[c] {
                    if rng.gen() {
                        left.push(v);
                    } else {
                        right.push(v);
                    }
                }
            }
            let mut candidate = classes.clone();
            candidate[c] = left;
            candidate.insert(c + 1, right);
            let p = OrderedPartition::from_vecs(g.n(), candidate.clone()).unwrap();
            if verify_good_partition(&g, &p).unwrap() {
                classes = candidate;
                splits += 1;
            }
        }

        let p = OrderedPartition::from_vecs(g.n(), classes).unwrap();
        assert!(verify_good_partition(&g, &p).unwrap());
        let aligned = left_align(&g, &p).unwrap();
        assert!(
            verify_good_partition(&g, &aligned).unwrap(),
            "alignment broke goodness, instance {instance}"
        );
        assert!(
            aligned.len() >= p.len(),
            "alignment lost classes: {} < {}, instance {instance}",
            aligned.len(),
            p.len()
        );
        for i in 1..aligned.len() {
            assert!(
                aligned.class(i).len() <= 2,
                "class {i} too wide after alignment, instance {instance}"
            );
        }
    }
    println!(
        "PASS criterion 8: 200 refined partitions ({splits} refinement splits applied) left-align \
         into good, left-aligned partitions without losing classes"
    );
}

#[test]
fn criterion_09_cubic_suite_unanimity() {
    let start = Instant::now();
    let mut reports = 0;
    for (name, g) in [("k33", k33()), ("prism", prism()), ("petersen", petersen())] {
        let report = CubicInstance::new(g).unwrap().cubic_suite().unwrap();
        assert!(report.unanimous(), "{name}: {:?}", report.verdicts());
        assert!(report.dual_critical, "{name}");
        reports += 1;
    }
    for seed in 0..50u64 {
        let g = random_cubic(10, 0xC9_0000 + seed).unwrap();
        let report = CubicInstance::new(g).unwrap().cubic_suite().unwrap();
        assert!(
            report.unanimous(),
            "seed {seed}: verdicts {:?}",
            report.verdicts()
        );
        reports += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "PASS criterion 9: all seven conditions unanimous on {reports} cubic instances \
         ({elapsed:.2?})"
    );
}

#[test]
fn criterion_10_planar_duality() {
    let corpus = embedded_corpus();
    assert!(corpus.len() >= 25, "only {} curated embeddings", corpus.len());
    for (name, rs) in &corpus {
        let report = rs.duality_check().unwrap();
        assert!(
            report.fc_primal_implies_dc_dual(),
            "{name}: factor-critical primal, dual not dual-critical"
        );
        assert!(
            report.dc_primal_implies_fc_dual(),
            "{name}: dual-critical primal, dual not factor-critical"
        );
    }

    let find = |name: &str| {
        &corpus
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("no embedding named {name}"))
            .1
    };

    // Triangle and the triple edge are each other's duals.
    let tri = find("triangle");
    let dual = tri.dual_graph().unwrap();
    assert_eq!((dual.n(), dual.m()), (2, 3));
    assert_eq!(dual.multiplicity(0, 1), 3);
    let report = tri.duality_check().unwrap();
    assert!(report.primal_fc && !report.primal_dc && report.dual_dc && !report.dual_fc);

    let theta = find("theta3");
    let dual = theta.dual_graph().unwrap();
    assert_eq!((dual.n(), dual.m()), (3, 3));
    assert!(!dual.has_loop());
    assert!(dual.degrees().iter().all(|&d| d == 2));
    let report = theta.duality_check().unwrap();
    assert!(report.primal_dc && report.dual_fc);

    // K23's dual is the doubled triangle.
    let k23_emb = find("k23");
    let dual = k23_emb.dual_graph().unwrap();
    assert_eq!((dual.n(), dual.m()), (3, 6));
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        assert_eq!(dual.multiplicity(u, v), 2);
    }
    let report = k23_emb.duality_check().unwrap();
    assert!(report.primal_dc && report.dual_fc);

    // The 4-wheel is self-dual and lies in all four classes at once.
    let wheel = find("w4");
    let dual = wheel.dual_graph().unwrap();
    let mut degs = dual.degrees();
    degs.sort_unstable();
    assert_eq!(degs, vec![3, 3, 3, 3, 4]);
    assert!(!dual.has_loop());
    let report = wheel.duality_check().unwrap();
    assert!(report.primal_dc && report.primal_fc && report.dual_dc && report.dual_fc);

    println!(
        "PASS criterion 10: both duality implications hold on all {} curated embeddings, \
         including the triangle/triple-edge, k23/doubled-triangle, and self-dual w4 pairs",
        corpus.len()
    );
}

#[test]
fn criterion_11_performance_targets() {
    // Exact decision at 22 vertices, positive and negative instances.
    let yes = random_dual_critical(22, 0xB11).unwrap();
    let t = Instant::now();
    assert!(dc(&yes));
    let exact_yes = t.elapsed();
    assert!(exact_yes <= Duration::from_secs(10), "took {exact_yes:?}");

    let no = complete(22);
    let t = Instant::now();
    assert!(!dc(&no));
    let exact_no = t.elapsed();
    assert!(exact_no <= Duration::from_secs(10), "took {exact_no:?}");

    // Greedy maximal partition at n = 2000, m = 10^4.
    let g = random_multigraph(2000, 10_000, 0xB12).unwrap();
    let t = Instant::now();
    let p = greedy_maximal_partition(&g).unwrap();
    let greedy_t = t.elapsed();
    assert!(greedy_t <= Duration::from_secs(5), "took {greedy_t:?}");
    // Maximality contract: every class induces an even-degree subgraph.
    let class_of = p.position_map();
    let mut within = vec![0usize; g.n()];
    for &(u, v) in g.edges() {
        if u != v && class_of[u] == class_of[v] {
            within[u] += 1;
            within[v] += 1;
        }
    }
    assert!(within.iter().all(|d| d % 2 == 0));

    // Kernelization at n = 5000, k = 5: one instance that must shrink and
    // one random instance through the same entry point.
    let g = even_clique_plus_isolates(6, 4994).unwrap();
    let t = Instant::now();
    let shrunk = kernelize(&g, 5).unwrap();
    let kernel_t = t.elapsed();
    assert!(kernel_t <= Duration::from_secs(60), "took {kernel_t:?}");
    match shrunk {
        KernelResult::Kernel { kernel, .. } => assert!(kernel.len() <= 30),
        KernelResult::Partition(_) => panic!("no good 5-partition exists here"),
    }

    let g = random_multigraph(5000, 12_000, 0xB13).unwrap();
    let t = Instant::now();
    let result = kernelize(&g, 5).unwrap();
    let kernel_rand_t = t.elapsed();
    assert!(kernel_rand_t <= Duration::from_secs(60), "took {kernel_rand_t:?}");
    match result {
        KernelResult::Kernel { kernel, .. } => assert!(kernel.len() <= 30),
        KernelResult::Partition(p) => assert!(verify_good_partition(&g, &p).unwrap()),
    }

    println!(
        "PASS criterion 11: exact n=22 in {exact_yes:.2?}/{exact_no:.2?}, greedy n=2000 m=10^4 \
         in {greedy_t:.2?}, kernelize k=5 n=5000 in {kernel_t:.2?}/{kernel_rand_t:.2?}"
    );
}
