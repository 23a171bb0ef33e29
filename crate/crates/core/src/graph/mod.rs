//! Configuration-model multigraphs, cuts, and the local-optimality machinery.

mod brute;
mod cubic;
mod cut;
pub mod io;
pub mod named;
mod search;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use brute::{
    max_induced_bipartite_bruteforce, maxcut_bruteforce, MaxCut, MAX_BIPARTITE_N, MAX_CUT_N,
};
pub use cubic::cubic_extend_coloring;
pub use cut::{is_locally_optimal, is_locally_optimal_with, Cut, LoopRule};
pub use search::{empirical_x, local_flip_search, local_flip_trace, EmpiricalX};

/// Undirected multigraph on `0..n`; loops and repeated edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        Ok(MultiGraph { n, edges })
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

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn non_loop_count(&self) -> usize {
        self.m() - self.loop_count()
    }

    /// Degree counting a loop twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Neighbor lists over non-loop edges, with repetition for parallel edges.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.m());
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&k| k == d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }
}

/// RNG for substream `stream` of `seed`; used wherever work is split into
/// independently seeded tasks.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Configuration-model multigraph: `2m` clones land on uniform vertices and a
/// uniform perfect matching of the clones gives the edges.
pub fn gen_config_multigraph(n: usize, m: usize, seed: u64) -> Result<MultiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_config_multigraph_with(n, m, &mut rng)
}

pub fn gen_config_multigraph_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::domain("graph needs at least one vertex"));
    }
    let mut clones: Vec<usize> = (0..2 * m).map(|_| rng.gen_range(0..n)).collect();
    clones.shuffle(rng);
    let edges = clones.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    Ok(MultiGraph { n, edges })
}
