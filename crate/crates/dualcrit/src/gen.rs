//! Seeded graph generators. Every generator is deterministic in its seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::graph::MultiGraph;
use crate::{Error, Result};

pub use crate::cubic::random_cubic;

/// Uniform random multigraph: each edge is a loop at a random vertex with
/// probability one in ten, otherwise a uniform pair of distinct vertices.
pub fn random_multigraph(n: usize, m: usize, seed: u64) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        if n > 1 && !rng.gen_ratio(1, 10) {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        } else {
            let v = rng.gen_range(0..n);
            edges.push((v, v));
        }
    }
    MultiGraph::new(n, edges)
}

/// Random dual-critical graph: vertices arrive one at a time, each wired to a
/// uniformly random odd-sized subset of its predecessors. The arrival order
/// is then a good ordering, so the output is dual-critical by construction.
pub fn random_dual_critical(n: usize, seed: u64) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        let mut parity_even = true;
        for j in 0..i {
            // Free coin for all but the last predecessor; the last one is
            // forced so the back-degree comes out odd.
            let take = if j + 1 < i {
                rng.gen_bool(0.5)
            } else {
                parity_even
            };
            if take {
                edges.push((j, i));
                parity_even = !parity_even;
            }
        }
    }
    MultiGraph::new(n, edges)
}

/// A clique of the given even order plus isolated vertices.
pub fn even_clique_plus_isolates(clique: usize, isolates: usize) -> Result<MultiGraph> {
    if clique < 2 || clique % 2 != 0 {
        return Err(Error::Precondition(format!(
            "clique order must be even and at least 2, got {}",
            clique
        )));
    }
    Ok(corpus::clique_plus_isolates(clique, isolates))
}
