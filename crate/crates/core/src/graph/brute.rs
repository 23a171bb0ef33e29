use serde::{Deserialize, Serialize};

use super::{Cut, MultiGraph};
use crate::error::{Error, Result};

pub const MAX_CUT_N: usize = 20;
pub const MAX_BIPARTITE_N: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCut {
    pub value: usize,
    /// Every side mask (bit `v` = vertex `v` on the first side) reaching `value`.
    pub maximizers: Vec<u64>,
}

impl MaxCut {
    pub fn cuts<'a>(&'a self, g: &'a MultiGraph) -> impl Iterator<Item = Cut> + 'a {
        self.maximizers
            .iter()
            .map(move |&mask| Cut::from_mask(g, mask))
    }
}

/// Exhaustive maximum cut over all `2^n` side assignments.
pub fn maxcut_bruteforce(g: &MultiGraph) -> Result<MaxCut> {
    let n = g.n();
    if n > MAX_CUT_N {
        return Err(Error::Resource {
            what: "max-cut enumeration vertices",
            needed: n as f64,
            budget: MAX_CUT_N as f64,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
    let mut best = MaxCut {
        value: 0,
        maximizers: Vec::new(),
    };
    for mask in 0u64..1 << n {
        let value = edges
            .iter()
            .filter(|&&(u, v)| (mask >> u ^ mask >> v) & 1 == 1)
            .count();
        if value > best.value {
            best.value = value;
            best.maximizers.clear();
        }
        if value == best.value {
            best.maximizers.push(mask);
        }
    }
    Ok(best)
}

/// 2-colorability of the subgraph induced by `mask`.
fn induced_bipartite(adj: &[u64], mask: u64) -> bool {
    let mut color = 0u64;
    let mut seen = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut frontier = 1u64 << start;
        seen |= frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nbrs = adj[v] & mask;
            let v_color = color >> v & 1;
            let colored = nbrs & seen;
            let clash = if v_color == 1 {
                colored & color
            } else {
                colored & !color
            };
            if clash != 0 {
                return false;
            }
            let fresh = nbrs & !seen;
            if v_color == 0 {
                color |= fresh;
            }
            seen |= fresh;
            frontier |= fresh;
        }
        rest &= !seen;
    }
    true
}

/// A largest vertex set inducing a bipartite subgraph; among maximizers the
/// one with the smallest mask is returned.
pub fn max_induced_bipartite_bruteforce(g: &MultiGraph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > MAX_BIPARTITE_N {
        return Err(Error::Resource {
            what: "induced-bipartite enumeration vertices",
            needed: n as f64,
            budget: MAX_BIPARTITE_N as f64,
        });
    }
    let mut adj = vec![0u64; n];
    let mut has_loop = 0u64;
    for &(u, v) in g.edges() {
        if u == v {
            has_loop |= 1 << u;
        } else {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let mut best: Option<u64> = None;
    for mask in 0u64..1 << n {
        if mask & has_loop != 0 {
            continue;
        }
        let better = best.is_none_or(|b| mask.count_ones() > b.count_ones());
        if better && induced_bipartite(&adj, mask) {
            best = Some(mask);
        }
    }
    let mask = best.unwrap_or(0);
    Ok((0..n).filter(|&v| mask >> v & 1 == 1).collect())
}
