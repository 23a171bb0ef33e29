//! Small fixed graphs and random cubic graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::MultiGraph;
use crate::error::{Error, Result};

pub fn complete(n: usize) -> MultiGraph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    MultiGraph::new(n, edges).expect("valid endpoints")
}

pub fn k33() -> MultiGraph {
    let edges = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    MultiGraph::new(6, edges).expect("valid endpoints")
}

pub fn petersen() -> MultiGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    MultiGraph::new(10, edges).expect("valid endpoints")
}

/// Uniform simple connected cubic graph on `n` vertices (`n` even, `n ≥ 4`)
/// by rejection from the pairing model.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MultiGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::domain(format!("no cubic graph on {n} vertices")));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
    for _ in 0..100_000 {
        points.shuffle(rng);
        let g = MultiGraph::new(n, points.chunks_exact(2).map(|p| (p[0], p[1])).collect())?;
        if g.is_simple() && g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Convergence {
        what: "random cubic rejection sampling",
        achieved: 100_000.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::substream;

    #[test]
    fn fixed_graphs_are_cubic() {
        for g in [complete(4), k33(), petersen()] {
            assert!(g.is_simple() && g.is_regular(3) && g.is_connected());
        }
    }

    #[test]
    fn random_cubic_is_valid() {
        let mut rng = substream(1, 0);
        for n in [4, 6, 10, 16] {
            let g = random_cubic(n, &mut rng).unwrap();
            assert!(g.is_simple() && g.is_regular(3) && g.is_connected());
        }
        assert!(random_cubic(5, &mut rng).is_err());
    }
}
