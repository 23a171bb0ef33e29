use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gen_config_multigraph_with, substream, Cut, MultiGraph};
use crate::error::{Error, Result};

/// Vertex set supporting O(1) insert, remove and uniform sampling.
struct IndexedSet {
    items: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl IndexedSet {
    fn new(n: usize) -> Self {
        IndexedSet {
            items: Vec::new(),
            pos: vec![None; n],
        }
    }

    fn insert(&mut self, v: usize) {
        if self.pos[v].is_none() {
            self.pos[v] = Some(self.items.len());
            self.items.push(v);
        }
    }

    fn remove(&mut self, v: usize) {
        if let Some(i) = self.pos[v].take() {
            self.items.swap_remove(i);
            if let Some(&moved) = self.items.get(i) {
                self.pos[moved] = Some(i);
            }
        }
    }
}

fn flip_search<R: Rng + ?Sized>(
    g: &MultiGraph,
    init: &Cut,
    rng: &mut R,
    mut on_flip: impl FnMut(usize),
) -> Result<Cut> {
    if !init.is_consistent(g) {
        return Err(Error::domain("initial cut does not match the graph"));
    }
    let adj = g.adjacency();
    let mut side = init.side.clone();
    let mut value = init.value;
    // same-side minus cross-side non-loop degree
    let mut gain: Vec<i64> = (0..g.n())
        .map(|v| {
            adj[v]
                .iter()
                .map(|&w| if side[w] == side[v] { 1 } else { -1 })
                .sum()
        })
        .collect();
    let mut improving = IndexedSet::new(g.n());
    for (v, _) in gain.iter().enumerate().filter(|(_, &d)| d > 0) {
        improving.insert(v);
    }
    while !improving.items.is_empty() {
        let v = improving.items[rng.gen_range(0..improving.items.len())];
        value = (value as i64 + gain[v]) as usize;
        side[v] = !side[v];
        gain[v] = -gain[v];
        improving.remove(v);
        for &w in &adj[v] {
            gain[w] += if side[w] == side[v] { 2 } else { -2 };
            if gain[w] > 0 {
                improving.insert(w);
            } else {
                improving.remove(w);
            }
        }
        on_flip(value);
    }
    Ok(Cut { side, value })
}

/// Flips a uniformly random strictly improving vertex until none is left.
pub fn local_flip_search(g: &MultiGraph, init: &Cut, seed: u64) -> Result<Cut> {
    flip_search(g, init, &mut substream(seed, 0), |_| {})
}

/// As [`local_flip_search`], also returning the cut value after each flip.
pub fn local_flip_trace(g: &MultiGraph, init: &Cut, seed: u64) -> Result<(Cut, Vec<usize>)> {
    let mut values = Vec::new();
    let cut = flip_search(g, init, &mut substream(seed, 0), |v| values.push(v))?;
    Ok((cut, values))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalX {
    pub n: usize,
    pub c: f64,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_x: f64,
    pub std_error: f64,
}

/// Mean of `(cut/n - c/2)/√c` over locally optimal cuts found by flip search
/// from uniformly random starts on `G(n, ⌊cn⌋)`.
pub fn empirical_x(n: usize, c: f64, trials: usize, seed: u64) -> Result<EmpiricalX> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!("c = {c} must be positive")));
    }
    let m = (c * n as f64).floor() as usize;
    if n == 0 || m == 0 {
        return Err(Error::domain("need n >= 1 and floor(c n) >= 1"));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be positive"));
    }
    let xs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<f64> {
            let mut rng = substream(seed, trial as u64);
            let g = gen_config_multigraph_with(n, m, &mut rng)?;
            let side = (0..n).map(|_| rng.gen::<bool>()).collect();
            let init = Cut::new(&g, side)?;
            let cut = flip_search(&g, &init, &mut rng, |_| {})?;
            Ok((cut.value as f64 / n as f64 - c / 2.0) / c.sqrt())
        })
        .collect::<Result<_>>()?;
    let mean = xs.iter().sum::<f64>() / trials as f64;
    let std_error = if trials > 1 {
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(EmpiricalX {
        n,
        c,
        m,
        trials,
        seed,
        mean_x: mean,
        std_error,
    })
}
