//! Planar embeddings as rotation systems, dual multigraphs, perfect
//! matchings, and the cross-checks tying dual-criticality to
//! factor-criticality of the planar dual.
//!
//! An embedding is supplied, never searched for: a rotation system lists the
//! darts around each vertex in cyclic order, and `trace_faces` accepts it only
//! when Euler's formula confirms genus zero. Edge e owns darts 2e (at its
//! first endpoint) and 2e+1 (at its second); the twin of a dart is `d ^ 1`.

use serde::Serialize;
use std::collections::HashMap;

use crate::exact::is_dual_critical;
use crate::graph::MultiGraph;
use crate::{Error, Result};

/// Largest vertex count for the exact matching search.
pub const MATCHING_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    graph: MultiGraph,
    rotations: Vec<Vec<usize>>,
}

/// The faces of an accepted embedding, each a cyclic dart sequence. A single
/// empty face stands for the outer face of the one-vertex, zero-edge graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Vec<usize>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    fn face_of_dart(&self, dart_count: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; dart_count];
        for (f, face) in self.faces.iter().enumerate() {
            for &d in face {
                owner[d] = f;
            }
        }
        owner
    }
}

impl RotationSystem {
    /// Wrap a graph with an explicit dart order around every vertex. Each of
    /// the 2m darts must appear exactly once, at the vertex it is incident
    /// to; both darts of a loop sit at the same vertex.
    pub fn new(graph: MultiGraph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if graph.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        if rotations.len() != graph.n() {
            return Err(Error::BadRotation(format!(
                "{} rotation lists for {} vertices",
                rotations.len(),
                graph.n()
            )));
        }
        let dart_count = 2 * graph.m();
        let mut seen_at = vec![usize::MAX; dart_count];
        for (v, rot) in rotations.iter().enumerate() {
            for &d in rot {
                if d >= dart_count {
                    return Err(Error::BadRotation(format!(
                        "dart {} out of range 0..{}",
                        d, dart_count
                    )));
                }
                if seen_at[d] != usize::MAX {
                    return Err(Error::BadRotation(format!("dart {} listed twice", d)));
                }
                seen_at[d] = v;
            }
        }
        for d in 0..dart_count {
            if seen_at[d] == usize::MAX {
                return Err(Error::BadRotation(format!("dart {} missing", d)));
            }
            let (u, w) = graph.endpoints(d / 2);
            let home = if d % 2 == 0 { u } else { w };
            if seen_at[d] != home {
                return Err(Error::BadRotation(format!(
                    "dart {} listed at vertex {}, incident to {}",
                    d, seen_at[d], home
                )));
            }
        }
        Ok(RotationSystem { graph, rotations })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// Walk every face: the successor of a dart is the rotation-successor of
    /// its twin. Accepts the embedding only when the underlying graph is
    /// connected and V - E + F = 2.
    pub fn trace_faces(&self) -> Result<FaceSet> {
        if !self.graph.is_connected()? {
            return Err(Error::Disconnected);
        }
        let n = self.graph.n();
        let m = self.graph.m();
        if m == 0 {
            // Connected and edgeless means a single vertex; one outer face.
            return Ok(FaceSet {
                faces: vec![vec![]],
            });
        }
        // successor[d] = the dart after d in its vertex's cyclic rotation.
        let mut successor = vec![0usize; 2 * m];
        for rot in &self.rotations {
            for (i, &d) in rot.iter().enumerate() {
                successor[d] = rot[(i + 1) % rot.len()];
            }
        }
        let mut faces = Vec::new();
        let mut visited = vec![false; 2 * m];
        for start in 0..2 * m {
            if visited[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                visited[d] = true;
                face.push(d);
                d = successor[d ^ 1];
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        let f = faces.len();
        if n + f != m + 2 {
            return Err(Error::NonPlanar { n, m, f });
        }
        Ok(FaceSet { faces })
    }

    /// One dual vertex per face; dual edge e joins the faces on the two sides
    /// of primal edge e (a loop when both sides coincide). Edge ids carry
    /// over unchanged.
    pub fn dual_graph(&self) -> Result<MultiGraph> {
        let faces = self.trace_faces()?;
        let owner = faces.face_of_dart(2 * self.graph.m());
        let edges = (0..self.graph.m())
            .map(|e| (owner[2 * e], owner[2 * e + 1]))
            .collect();
        MultiGraph::new(faces.len(), edges)
    }

    /// The dual together with its induced embedding: the rotation at a dual
    /// vertex is its face's dart cycle. Tracing the dual's faces recovers the
    /// primal's vertices, so taking the dual twice restores this embedding.
    pub fn dual_rotation_system(&self) -> Result<RotationSystem> {
        let faces = self.trace_faces()?;
        let dual = self.dual_graph()?;
        RotationSystem::new(dual, faces.faces)
    }

    /// Dual-criticality and factor-criticality of both the graph and its
    /// dual, with the two one-way implications between them.
    pub fn duality_check(&self) -> Result<DualityReport> {
        let dual = self.dual_graph()?;
        Ok(DualityReport {
            primal_dc: is_dual_critical(&self.graph)?,
            primal_fc: is_factor_critical(&self.graph)?,
            dual_dc: is_dual_critical(&dual)?,
            dual_fc: is_factor_critical(&dual)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub primal_dc: bool,
    pub primal_fc: bool,
    pub dual_dc: bool,
    pub dual_fc: bool,
}

impl DualityReport {
    pub fn fc_primal_implies_dc_dual(&self) -> bool {
        !self.primal_fc || self.dual_dc
    }

    pub fn dc_primal_implies_fc_dual(&self) -> bool {
        !self.primal_dc || self.dual_fc
    }

    pub fn consistent(&self) -> bool {
        self.fc_primal_implies_dc_dual() && self.dc_primal_implies_fc_dual()
    }
}

/// Exact perfect-matching test by bitset recursion over unmatched vertices.
/// Loops never participate; multiplicities do not matter.
pub fn has_perfect_matching(g: &MultiGraph) -> Result<bool> {
    if g.n() > MATCHING_LIMIT {
        return Err(Error::TooLarge {
            what: "matching vertex count",
            n: g.n(),
            limit: MATCHING_LIMIT,
        });
    }
    if g.n() % 2 != 0 {
        return Ok(false);
    }
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full: u32 = if g.n() == 32 {
        u32::MAX
    } else {
        (1u32 << g.n()) - 1
    };
    let mut memo: HashMap<u32, bool> = HashMap::new();
    fn solve(rem: u32, adj: &[u32], memo: &mut HashMap<u32, bool>) -> bool {
        if rem == 0 {
            return true;
        }
        if let Some(&hit) = memo.get(&rem) {
            return hit;
        }
        let v = rem.trailing_zeros() as usize;
        let mut partners = adj[v] & rem & !(1 << v);
        let mut found = false;
        while partners != 0 {
            let w = partners.trailing_zeros();
            partners &= partners - 1;
            if solve(rem & !(1 << v) & !(1 << w), adj, memo) {
                found = true;
                break;
            }
        }
        memo.insert(rem, found);
        found
    }
    Ok(solve(full, &adj, &mut memo))
}

/// A graph is factor-critical when deleting any one vertex leaves a graph
/// with a perfect matching. The single vertex qualifies; even orders never
/// do.
pub fn is_factor_critical(g: &MultiGraph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > MATCHING_LIMIT + 1 {
        return Err(Error::TooLarge {
            what: "factor-criticality vertex count",
            n: g.n(),
            limit: MATCHING_LIMIT + 1,
        });
    }
    if g.n() % 2 == 0 {
        return Ok(false);
    }
    for v in 0..g.n() {
        if !has_perfect_matching(&g.delete_vertex(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step of the factor-critical build: new edges and loops may land
/// anywhere, and any existing edge can be subdivided into a path of length
/// three through two fresh vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildStep {
    AddEdge { u: usize, v: usize },
    AddLoop { v: usize },
    SubdivideP3 { edge: usize },
}

/// Grow a factor-critical multigraph from a single vertex. Every graph this
/// produces is factor-critical, and every factor-critical graph arises from
/// some script.
pub fn fc_builder(script: &[BuildStep]) -> Result<MultiGraph> {
    let mut n = 1usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for step in script {
        match *step {
            BuildStep::AddEdge { u, v } => {
                if u >= n || v >= n {
                    return Err(Error::InvalidVertex {
                        vertex: u.max(v),
                        n,
                    });
                }
                edges.push((u, v));
            }
            BuildStep::AddLoop { v } => {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
                edges.push((v, v));
            }
            BuildStep::SubdivideP3 { edge } => {
                if edge >= edges.len() {
                    return Err(Error::InvalidEdge {
                        edge,
                        m: edges.len(),
                    });
                }
                let (u, v) = edges[edge];
                let (a, b) = (n, n + 1);
                n += 2;
                edges[edge] = (u, a);
                edges.push((a, b));
                edges.push((b, v));
            }
        }
    }
    MultiGraph::new(n, edges)
}

/// Parse the rotation file format: a header `n m`, then one line per vertex,
/// `v: d1 d2 ... dk`, where dart `e+` is edge e at its first endpoint and
/// `e-` at its second. `#` starts a comment; blank lines are skipped. The
/// underlying graph is reconstructed from the dart placements.
pub fn parse_rotation(text: &str) -> Result<RotationSystem> {
    let mut header: Option<(usize, usize)> = None;
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = content.split_whitespace().collect();
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected a header line `n m`".to_string(),
                    });
                }
                let n = fields[0].parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("not a vertex count: {:?}", fields[0]),
                })?;
                let m = fields[1].parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("not an edge count: {:?}", fields[1]),
                })?;
                header = Some((n, m));
                rotations = vec![None; n];
            }
            Some((n, m)) => {
                let (head, rest) = content.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    msg: "expected `v: darts...`".to_string(),
                })?;
                let v = head.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("not a vertex id: {:?}", head.trim()),
                })?;
                if v >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex {} outside 0..{}", v, n),
                    });
                }
                if rotations[v].is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex {} listed twice", v),
                    });
                }
                let mut darts = Vec::new();
                for tok in rest.split_whitespace() {
                    let (id_part, side) = tok.split_at(tok.len() - 1);
                    let e = id_part.parse::<usize>().ok().filter(|&e| e < m).ok_or_else(
                        || Error::Parse {
                            line,
                            msg: format!("not a dart: {:?}", tok),
                        },
                    )?;
                    let d = match side {
                        "+" => 2 * e,
                        "-" => 2 * e + 1,
                        _ => {
                            return Err(Error::Parse {
                                line,
                                msg: format!("dart {:?} must end in + or -", tok),
                            })
                        }
                    };
                    darts.push(d);
                }
                rotations[v] = Some(darts);
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "empty input, expected a header line `n m`".to_string(),
    })?;
    let mut rots = Vec::with_capacity(n);
    for (v, rot) in rotations.into_iter().enumerate() {
        rots.push(rot.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("no rotation line for vertex {}", v),
        })?);
    }
    // Recover each edge's endpoints from where its darts were listed.
    let mut ends = vec![(usize::MAX, usize::MAX); m];
    for (v, rot) in rots.iter().enumerate() {
        for &d in rot {
            let slot = &mut ends[d / 2];
            if d % 2 == 0 {
                slot.0 = v;
            } else {
                slot.1 = v;
            }
        }
    }
    for (e, &(u, v)) in ends.iter().enumerate() {
        if u == usize::MAX || v == usize::MAX {
            return Err(Error::Parse {
                line: 0,
                msg: format!("edge {} is missing a dart", e),
            });
        }
    }
    let graph = MultiGraph::new(n, ends)?;
    RotationSystem::new(graph, rots)
}

pub fn serialize_rotation(r: &RotationSystem) -> String {
    let mut out = format!("{} {}\n", r.graph.n(), r.graph.m());
    for (v, rot) in r.rotations.iter().enumerate() {
        out.push_str(&format!("{}:", v));
        for &d in rot {
            out.push_str(&format!(" {}{}", d / 2, if d % 2 == 0 { "+" } else { "-" }));
        }
        out.push('\n');
    }
    out
}

/// Hand-drawn genus-0 embeddings of the planar corpus graphs, in the rotation
/// file format. Every entry passes `trace_faces`.
pub fn embedded_corpus() -> Vec<(&'static str, RotationSystem)> {
    let sources: Vec<(&'static str, &'static str)> = vec![
        ("k1", "1 0\n0:\n"),
        ("k2", "2 1\n0: 0+\n1: 0-\n"),
        ("p3", "3 2\n0: 0+\n1: 0- 1+\n2: 1-\n"),
        ("k13", "4 3\n0: 0+ 1+ 2+\n1: 0-\n2: 1-\n3: 2-\n"),
        ("triangle", "3 3\n0: 0+ 2-\n1: 0- 1+\n2: 1- 2+\n"),
        ("c4", "4 4\n0: 0+ 3-\n1: 0- 1+\n2: 1- 2+\n3: 2- 3+\n"),
        ("c5", "5 5\n0: 0+ 4-\n1: 0- 1+\n2: 1- 2+\n3: 2- 3+\n4: 3- 4+\n"),
        ("theta3", "2 3\n0: 0+ 1+ 2+\n1: 2- 1- 0-\n"),
        (
            "k4",
            "4 6\n0: 0+ 2+ 1+\n1: 3+ 4+ 0-\n2: 1- 5+ 3-\n3: 5- 2- 4-\n",
        ),
        (
            "diamond",
            "4 5\n0: 0+ 1+\n1: 0- 2+ 3+\n2: 4+ 2- 1-\n3: 3- 4-\n",
        ),
        (
            "bowtie",
            "5 6\n0: 0+ 2+\n1: 1+ 0-\n2: 5+ 2- 1- 3+\n3: 4+ 3-\n4: 5- 4-\n",
        ),
        (
            "c5-chord",
            "5 6\n0: 0+ 5+ 4-\n1: 0- 1+\n2: 2+ 5- 1-\n3: 3+ 2-\n4: 4+ 3-\n",
        ),
        (
            "k23",
            "5 6\n0: 0+ 1+ 2+\n1: 5+ 4+ 3+\n2: 0- 3-\n3: 1- 4-\n4: 2- 5-\n",
        ),
        (
            "w4",
            "5 8\n0: 0+ 1+ 2+ 3+\n1: 4+ 0- 7-\n2: 5+ 1- 4-\n3: 2- 5- 6+\n4: 7+ 3- 6-\n",
        ),
        (
            "w5",
            "6 10\n0: 0+ 1+ 2+ 3+ 4+\n1: 5+ 0- 9-\n2: 6+ 1- 5-\n3: 7+ 2- 6-\n4: 8+ 3- 7-\n5: 9+ 4- 8-\n",
        ),
        (
            "prism",
            "6 9\n0: 6+ 0+ 2+\n1: 1+ 0- 7+\n2: 2- 1- 8+\n3: 3+ 6- 5+\n4: 4+ 7- 3-\n5: 5- 8- 4-\n",
        ),
        (
            "two-triangles-bridge",
            "6 7\n0: 0+ 2+\n1: 1+ 0-\n2: 6+ 2- 1-\n3: 3+ 6- 5+\n4: 3- 4+\n5: 4- 5-\n",
        ),
        (
            "k4-pendant",
            "5 7\n0: 0+ 2+ 1+\n1: 3+ 4+ 0- 6+\n2: 1- 5+ 3-\n3: 5- 2- 4-\n4: 6-\n",
        ),
        (
            "cube",
            "8 12\n0: 0+ 1+ 2+\n1: 3+ 0- 4+\n2: 5+ 6+ 1-\n3: 7+ 5- 3-\n4: 8+ 2- 9+\n5: 10+ 4- 8-\n6: 11+ 9- 6-\n7: 11- 7- 10-\n",
        ),
        ("p4", "4 3\n0: 0+\n1: 0- 1+\n2: 1- 2+\n3: 2-\n"),
        ("p5", "5 4\n0: 0+\n1: 0- 1+\n2: 1- 2+\n3: 2- 3+\n4: 3-\n"),
        ("k14", "5 4\n0: 0+ 1+ 2+ 3+\n1: 0-\n2: 1-\n3: 2-\n4: 3-\n"),
        (
            "c6",
            "6 6\n0: 0+ 5-\n1: 0- 1+\n2: 1- 2+\n3: 2- 3+\n4: 3- 4+\n5: 4- 5+\n",
        ),
        (
            "c7",
            "7 7\n0: 0+ 6-\n1: 0- 1+\n2: 1- 2+\n3: 2- 3+\n4: 3- 4+\n5: 4- 5+\n6: 5- 6+\n",
        ),
        ("paw", "4 4\n0: 0+ 2+ 3+\n1: 1+ 0-\n2: 2- 1-\n3: 3-\n"),
        (
            "bull",
            "5 5\n0: 0+ 2+\n1: 3+ 1+ 0-\n2: 4+ 2- 1-\n3: 3-\n4: 4-\n",
        ),
        (
            "doubled-triangle",
            "3 6\n0: 1+ 0+ 4+ 5+\n1: 3+ 2+ 0- 1-\n2: 5- 4- 2- 3-\n",
        ),
        (
            "triangle-doubled-edge",
            "3 4\n0: 1+ 0+ 3+\n1: 2+ 0- 1-\n2: 3- 2-\n",
        ),
        (
            "w6",
            "7 12\n0: 0+ 1+ 2+ 3+ 4+ 5+\n1: 6+ 0- 11-\n2: 7+ 1- 6-\n3: 8+ 2- 7-\n4: 9+ 3- 8-\n5: 10+ 4- 9-\n6: 11+ 5- 10-\n",
        ),
    ];
    sources
        .into_iter()
        .map(|(name, text)| {
            let r = parse_rotation(text).expect(name);
            (name, r)
        })
        .collect()
}
