use serde::{Deserialize, Serialize};

use super::MultiGraph;
use crate::error::{Error, Result};

/// Two-sided vertex assignment together with its cut value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: Vec<bool>,
    pub value: usize,
}

impl Cut {
    pub fn new(g: &MultiGraph, side: Vec<bool>) -> Result<Self> {
        if side.len() != g.n() {
            return Err(Error::domain(format!(
                "cut assigns {} vertices, graph has {}",
                side.len(),
                g.n()
            )));
        }
        let value = count_crossing(g, &side);
        Ok(Cut { side, value })
    }

    /// Cut whose first side is the bit set of `mask` (vertex `v` is bit `v`).
    pub fn from_mask(g: &MultiGraph, mask: u64) -> Self {
        let side: Vec<bool> = (0..g.n()).map(|v| mask >> v & 1 == 1).collect();
        let value = count_crossing(g, &side);
        Cut { side, value }
    }

    pub fn recount(&self, g: &MultiGraph) -> usize {
        count_crossing(g, &self.side)
    }

    pub fn is_consistent(&self, g: &MultiGraph) -> bool {
        self.side.len() == g.n() && self.recount(g) == self.value
    }
}

fn count_crossing(g: &MultiGraph, side: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| side[u] != side[v])
        .count()
}

/// How loops enter the per-vertex degree counts of the local-optimality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopRule {
    /// Loops are ignored; flipping a vertex never changes a loop.
    Exclude,
    /// A loop is two same-side clone incidences, as in the occupancy model
    /// behind the moment formulas.
    CountTwice,
}

/// True iff every vertex has at least as many edges across the cut as on its
/// own side, loops excluded.
pub fn is_locally_optimal(g: &MultiGraph, cut: &Cut) -> bool {
    is_locally_optimal_with(g, &cut.side, LoopRule::Exclude)
}

pub fn is_locally_optimal_with(g: &MultiGraph, side: &[bool], loops: LoopRule) -> bool {
    // cross - same, per vertex
    let mut balance = vec![0i64; g.n()];
    for &(u, v) in g.edges() {
        if u == v {
            if loops == LoopRule::CountTwice {
                balance[u] -= 2;
            }
        } else if side[u] != side[v] {
            balance[u] += 1;
            balance[v] += 1;
        } else {
            balance[u] -= 1;
            balance[v] -= 1;
        }
    }
    balance.iter().all(|&b| b >= 0)
}
