//! Flat-file interchange: the edge-list graph format and JSON certificates.
//!
//! Edge-list format: the first significant line is `n m`, followed by m lines
//! `u v` with 0-based endpoints (loops as `u u`). Anything after `#` is a
//! comment; blank lines are skipped.
//!
//! Certificates carry enough data to re-check a claim from scratch, without
//! trusting the code that produced it: good orderings, T-odd orderings, good
//! partitions, and kernelization transcripts.

use serde::{Deserialize, Serialize};

use crate::exact::{verify_good_ordering, verify_t_odd_ordering, GoodOrdering, TOddOrdering};
use crate::graph::{MultiGraph, OrderedPartition, VertexSet};
use crate::kdc::{verify_good_partition, Removal, WitnessKind};
use crate::{Error, Result};

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected two fields, found {}", fields.len()),
            });
        }
        let a = fields[0].parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("not a vertex count or id: {:?}", fields[0]),
        })?;
        let b = fields[1].parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("not an edge count or id: {:?}", fields[1]),
        })?;
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(Error::Parse {
                        line,
                        msg: format!("more than {} edge lines", m),
                    });
                }
                if a >= n || b >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("edge ({}, {}) outside 0..{}", a, b, n),
                    });
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "empty input, expected a header line `n m`".to_string(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header promised {} edges, found {}", m, edges.len()),
        });
    }
    MultiGraph::new(n, edges)
}

pub fn serialize_graph(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}

/// A verifiable claim about a graph. The JSON shape identifies the kind:
/// `{"ordering", "indegrees"}` for good orderings, plus `"target"` for T-odd
/// orderings, `{"classes"}` for good partitions, and
/// `{"k", "kernel", "removals"}` for kernelization transcripts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Kernel {
        k: usize,
        kernel: Vec<usize>,
        removals: Vec<Removal>,
    },
    TOdd {
        ordering: Vec<usize>,
        indegrees: Vec<usize>,
        target: Vec<usize>,
    },
    Ordering {
        ordering: Vec<usize>,
        indegrees: Vec<usize>,
    },
    Partition {
        classes: Vec<Vec<usize>>,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Kernel { .. } => "kernel",
            Certificate::TOdd { .. } => "todd",
            Certificate::Ordering { .. } => "ordering",
            Certificate::Partition { .. } => "partition",
        }
    }
}

fn size_mismatch(what: &str) -> Error {
    Error::Precondition(format!("certificate does not match the graph: {}", what))
}

/// Re-check a certificate against a graph from first principles. Returns
/// false for a well-formed certificate whose claim fails, and an error when
/// the certificate cannot refer to this graph at all (wrong vertex count,
/// out-of-range ids).
pub fn verify_certificate(g: &MultiGraph, cert: &Certificate) -> Result<bool> {
    let n = g.n();
    match cert {
        Certificate::Ordering {
            ordering,
            indegrees,
        } => {
            if ordering.len() != n || indegrees.len() != n {
                return Err(size_mismatch("ordering length differs from n"));
            }
            let c = GoodOrdering {
                order: ordering.clone(),
                indegrees: indegrees.clone(),
            };
            Ok(verify_good_ordering(g, &c).is_ok())
        }
        Certificate::TOdd {
            ordering,
            indegrees,
            target,
        } => {
            if ordering.len() != n || indegrees.len() != n {
                return Err(size_mismatch("ordering length differs from n"));
            }
            if target.iter().any(|&v| v >= n) {
                return Err(size_mismatch("target vertex outside the graph"));
            }
            let c = TOddOrdering {
                order: ordering.clone(),
                indegrees: indegrees.clone(),
                target: target.clone(),
            };
            Ok(verify_t_odd_ordering(g, &c).is_ok())
        }
        Certificate::Partition { classes } => {
            if classes.iter().flatten().any(|&v| v >= n) {
                return Err(size_mismatch("class member outside the graph"));
            }
            match OrderedPartition::from_vecs(n, classes.clone()) {
                Err(_) => Ok(false),
                Ok(p) => verify_good_partition(g, &p),
            }
        }
        Certificate::Kernel {
            k,
            kernel,
            removals,
        } => {
            if kernel.iter().any(|&v| v >= n)
                || removals
                    .iter()
                    .any(|r| r.vertices.iter().chain(&r.witness).any(|&v| v >= n))
            {
                return Err(size_mismatch("kernel vertex outside the graph"));
            }
            Ok(replay_kernel(g, *k, kernel, removals))
        }
    }
}

/// Replay a kernelization transcript: each removal must be an even-sized
/// subset of a pairwise equivalent witness bucket of size at least k+2 in the
/// graph as it stood, keeping at least k witnesses, and the final kernel must
/// be the survivors (at most 6k of them), or the single lowest survivor when
/// the remaining skeleton is even.
fn replay_kernel(g: &MultiGraph, k: usize, kernel: &[usize], removals: &[Removal]) -> bool {
    let n = g.n();
    if k < 1 {
        return false;
    }
    let mut alive = VertexSet::full(n);
    for r in removals {
        if r.vertices.is_empty() || r.vertices.len() % 2 != 0 {
            return false;
        }
        if r.witness.len() < k + 2 || r.vertices.len() > r.witness.len() - k {
            return false;
        }
        if r.vertices.iter().any(|v| !r.witness.contains(v)) {
            return false;
        }
        if r.witness.iter().any(|&v| !alive.contains(v)) {
            return false;
        }
        // Pairwise equivalence in the current graph, on skeleton adjacency.
        let (h, old_ids) = g.induced(&alive);
        let mut new_of_old = vec![usize::MAX; n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of_old[old] = new;
        }
        let sk = h.parity_skeleton();
        let mut nbr = vec![Vec::new(); sk.n()];
        for &(u, v) in sk.edges() {
            nbr[u].push(v);
            nbr[v].push(u);
        }
        for list in &mut nbr {
            list.sort_unstable();
        }
        let sig = |v: usize| -> Vec<usize> {
            let mut s = nbr[new_of_old[v]].clone();
            if r.kind == WitnessKind::C {
                s.push(new_of_old[v]);
                s.sort_unstable();
            }
            s
        };
        let first = sig(r.witness[0]);
        if r.witness.iter().any(|&v| sig(v) != first) {
            return false;
        }
        for &v in &r.vertices {
            alive.remove(v);
        }
    }
    let survivors = alive.to_vec();
    let mut sorted_kernel = kernel.to_vec();
    sorted_kernel.sort_unstable();
    sorted_kernel.dedup();
    if sorted_kernel.len() != kernel.len() {
        return false;
    }
    if sorted_kernel == survivors {
        return survivors.len() <= 6 * k;
    }
    // Even-remainder shortcut: a single lowest survivor stands for the whole
    // even graph.
    if sorted_kernel.len() == 1 && Some(sorted_kernel[0]) == survivors.first().copied() {
        let (h, _) = g.induced(&alive);
        return h.is_even_graph();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::find_good_ordering;
    use crate::kdc::{kernelize, KernelResult};

    #[test]
    fn graph_round_trip() {
        for (name, g, _) in corpus::named_with_dc_status() {
            let text = serialize_graph(&g);
            let back = parse_graph(&text).unwrap();
            assert_eq!(g, back, "round trip of {}", name);
        }
        // Loops and comments.
        let text = "# a loop and a doubled edge\n3 3\n0 0\n1 2\n1 2 # parallel\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 0), (1, 2), (1, 2)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_graph("2 1\n0 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        match parse_graph("2 2\n0 1\n") {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected parse error, got {:?}", other),
        }
        match parse_graph("2 0\n0 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        match parse_graph("1 1\nx y\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn certificate_json_shapes() {
        let cert = Certificate::Ordering {
            ordering: vec![0, 1],
            indegrees: vec![0, 1],
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"ordering":[0,1],"indegrees":[0,1]}"#);
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);

        let todd: Certificate =
            serde_json::from_str(r#"{"ordering":[0,1],"indegrees":[0,1],"target":[1]}"#).unwrap();
        assert_eq!(todd.kind(), "todd");

        let part: Certificate = serde_json::from_str(r#"{"classes":[[0,1],[2]]}"#).unwrap();
        assert_eq!(part.kind(), "partition");

        let kern: Certificate =
            serde_json::from_str(r#"{"k":2,"kernel":[0,1,2],"removals":[]}"#).unwrap();
        assert_eq!(kern.kind(), "kernel");
    }

    #[test]
    fn ordering_certificates_verify_and_reject() {
        let k23 = corpus::k23();
        let good = find_good_ordering(&k23).unwrap().unwrap();
        let cert = Certificate::Ordering {
            ordering: good.order.clone(),
            indegrees: good.indegrees.clone(),
        };
        assert!(verify_certificate(&k23, &cert).unwrap());
        let mut tampered = good.indegrees.clone();
        tampered[1] += 1;
        let bad = Certificate::Ordering {
            ordering: good.order,
            indegrees: tampered,
        };
        assert!(!verify_certificate(&k23, &bad).unwrap());
        // Wrong graph size is an error, not a false.
        let k2 = corpus::k2();
        assert!(verify_certificate(&k2, &bad).is_err());
    }

    #[test]
    fn partition_certificates() {
        let k23 = corpus::k23();
        let good = Certificate::Partition {
            classes: vec![vec![0, 2, 3, 4], vec![1]],
        };
        assert!(verify_certificate(&k23, &good).unwrap());
        let c4 = corpus::cycle(4);
        let even_cut = Certificate::Partition {
            classes: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(!verify_certificate(&c4, &even_cut).unwrap());
        // Structural garbage is false, out-of-range ids are an error.
        let overlap = Certificate::Partition {
            classes: vec![vec![0, 1], vec![1, 2, 3]],
        };
        assert!(!verify_certificate(&c4, &overlap).unwrap());
        let oob = Certificate::Partition {
            classes: vec![vec![0, 1], vec![2, 9]],
        };
        assert!(verify_certificate(&c4, &oob).is_err());
    }

    #[test]
    fn kernel_certificates_replay() {
        let g = corpus::clique_plus_isolates(6, 20);
        let KernelResult::Kernel { kernel, removals } = kernelize(&g, 3).unwrap() else {
            panic!("expected kernel");
        };
        let cert = Certificate::Kernel {
            k: 3,
            kernel: kernel.clone(),
            removals: removals.clone(),
        };
        assert!(verify_certificate(&g, &cert).unwrap());

        // Tampering with the removal set breaks the replay.
        let mut bad_removals = removals.clone();
        bad_removals[0].vertices[0] = 5; // a clique vertex, not an isolate
        let bad = Certificate::Kernel {
            k: 3,
            kernel: kernel.clone(),
            removals: bad_removals,
        };
        assert!(!verify_certificate(&g, &bad).unwrap());

        // Odd-sized removals are invalid.
        let mut odd_removals = removals.clone();
        odd_removals[0].vertices.pop();
        let odd = Certificate::Kernel {
            k: 3,
            kernel,
            removals: odd_removals,
        };
        assert!(!verify_certificate(&g, &odd).unwrap());

        // Even-remainder shortcut.
        let c = corpus::cycle(20);
        let KernelResult::Kernel { kernel, removals } = kernelize(&c, 3).unwrap() else {
            panic!("expected kernel");
        };
        assert_eq!(kernel, vec![0]);
        let cert = Certificate::Kernel {
            k: 3,
            kernel,
            removals,
        };
        assert!(verify_certificate(&c, &cert).unwrap());
        // The same singleton claim on a non-even graph fails.
        let path = corpus::path(20);
        let lying = Certificate::Kernel {
            k: 3,
            kernel: vec![0],
            removals: vec![],
        };
        assert!(!verify_certificate(&path, &lying).unwrap());
    }

    #[test]
    fn kernel_replay_rejects_oversized_kernel() {
        // 19 survivors with k = 3 exceeds 6k = 18 and must fail even though
        // the removal itself is sound.
        let g = corpus::clique_plus_isolates(6, 15);
        let KernelResult::Kernel { kernel, removals } = kernelize(&g, 3).unwrap() else {
            panic!("expected kernel");
        };
        assert!(kernel.len() <= 18);
        let padded = Certificate::Kernel {
            k: 3,
            kernel: (0..21).collect(),
            removals: vec![],
        };
        assert!(!verify_certificate(&g, &padded).unwrap());
        let honest = Certificate::Kernel {
            k: 3,
            kernel,
            removals,
        };
        assert!(verify_certificate(&g, &honest).unwrap());
    }
}
