use rand::Rng;

use super::{substream, Cut, MultiGraph};
use crate::error::{Error, Result};

/// Two-colors the bipartite set, then repeatedly colors an uncolored vertex
/// with the most colored neighbors (ties uniform) against the majority color
/// of those neighbors (ties uniform).
pub fn cubic_extend_coloring(g: &MultiGraph, bipartite_set: &[usize], seed: u64) -> Result<Cut> {
    let n = g.n();
    if !g.is_simple() {
        return Err(Error::domain("graph must be simple"));
    }
    if !g.is_regular(3) {
        return Err(Error::domain("graph must be 3-regular"));
    }
    if !g.is_connected() {
        return Err(Error::domain("graph must be connected"));
    }
    let adj = g.adjacency();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut in_set = vec![false; n];
    for &v in bipartite_set {
        if v >= n {
            return Err(Error::domain(format!("vertex {v} outside 0..{n}")));
        }
        in_set[v] = true;
    }

    for &root in bipartite_set {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let cu = color[u].expect("colored on push");
            for &w in &adj[u] {
                if !in_set[w] {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(Error::domain("bipartite set induces an odd cycle"));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut rng = substream(seed, 0);
    let mut colored_nbrs: Vec<usize> = (0..n)
        .map(|v| adj[v].iter().filter(|&&w| color[w].is_some()).count())
        .collect();
    let mut remaining = n - color.iter().filter(|c| c.is_some()).count();
    while remaining > 0 {
        let best = (0..n)
            .filter(|&v| color[v].is_none())
            .map(|v| colored_nbrs[v])
            .max()
            .expect("uncolored vertex exists");
        let candidates: Vec<usize> = (0..n)
            .filter(|&v| color[v].is_none() && colored_nbrs[v] == best)
            .collect();
        let v = candidates[rng.gen_range(0..candidates.len())];
        let ones = adj[v].iter().filter(|&&w| color[w] == Some(true)).count();
        let zeros = adj[v].iter().filter(|&&w| color[w] == Some(false)).count();
        let c = match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => rng.gen(),
        };
        color[v] = Some(c);
        for &w in &adj[v] {
            colored_nbrs[w] += 1;
        }
        remaining -= 1;
    }
    Cut::new(
        g,
        color.into_iter().map(|c| c.expect("all colored")).collect(),
    )
}
