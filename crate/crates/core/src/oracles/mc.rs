//! Monte Carlo estimates of the same moments by sampling configuration
//! multigraphs and enumerating every cut.
//!
//! Samples are processed in fixed-size chunks, each with its own RNG
//! substream, and all running sums are integers, so the estimates do not
//! depend on the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moments::MomentQuery;
use crate::error::{Error, Result};
use crate::graph::{gen_config_multigraph_with, substream};

pub const MC_MAX_N: usize = 16;
const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_sums(sum: u128, sum_sq: u128, samples: usize) -> Self {
        let k = samples as f64;
        let mean = sum as f64 / k;
        let std_error = if samples > 1 {
            let var = ((sum_sq as f64) - (sum as f64) * mean).max(0.0) / (k - 1.0);
            (var / k).sqrt()
        } else {
            0.0
        };
        McEstimate {
            mean,
            std_error,
            samples,
        }
    }

    /// `|mean - exact|` in units of the standard error; an estimate with zero
    /// spread must hit `exact` to within rounding.
    pub fn z_score(&self, exact: f64) -> f64 {
        let d = (self.mean - exact).abs();
        if self.std_error > 0.0 {
            d / self.std_error
        } else if d <= 1e-12 * exact.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Per-`zn` estimates from one sampling pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimates {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// `E[X(zn)]` over `|V₁| ≥ |V₂|`, indexed by `zn`.
    pub first: Vec<McEstimate>,
    /// `E[X_bal(zn)]`, indexed by `zn` (empty for odd `n`).
    pub balanced: Vec<McEstimate>,
    /// `E[X_bal(zn)²]`, indexed by `zn` (empty for odd `n`).
    pub second: Vec<McEstimate>,
}

#[derive(Clone)]
struct Sums {
    x: Vec<u128>,
    x2: Vec<u128>,
    b: Vec<u128>,
    b2: Vec<u128>,
    b4: Vec<u128>,
}

impl Sums {
    fn zero(len: usize) -> Self {
        Sums {
            x: vec![0; len],
            x2: vec![0; len],
            b: vec![0; len],
            b2: vec![0; len],
            b4: vec![0; len],
        }
    }

    fn add(mut self, other: Sums) -> Sums {
        for (a, b) in [
            (&mut self.x, &other.x),
            (&mut self.x2, &other.x2),
            (&mut self.b, &other.b),
            (&mut self.b2, &other.b2),
            (&mut self.b4, &other.b4),
        ] {
            for (s, o) in a.iter_mut().zip(b) {
                *s += o;
            }
        }
        self
    }
}

/// Cut size of `mask` if every vertex has at least as many cross clones as
/// same-side clones (a loop is two same-side clones).
fn locally_optimal_cut(edges: &[(usize, usize)], n: usize, mask: u32) -> Option<usize> {
    let mut balance = [0i32; MC_MAX_N];
    let mut cut = 0;
    for &(u, v) in edges {
        if (mask >> u ^ mask >> v) & 1 == 1 {
            balance[u] += 1;
            balance[v] += 1;
            cut += 1;
        } else {
            balance[u] -= 1;
            balance[v] -= 1;
        }
    }
    balance[..n].iter().all(|&b| b >= 0).then_some(cut)
}

/// Samples `samples` graphs `G(n, m)` and estimates the first moment for every
/// `zn ∈ 0..=m` and, for even `n`, the balanced first and second moments.
pub fn moment_mc(n: usize, m: usize, samples: usize, seed: u64) -> Result<MomentEstimates> {
    if samples == 0 {
        return Err(Error::domain("samples must be positive"));
    }
    if n == 0 {
        return Err(Error::domain("need at least one vertex"));
    }
    if n > MC_MAX_N {
        return Err(Error::Resource {
            what: "Monte Carlo cut enumeration vertices",
            needed: n as f64,
            budget: MC_MAX_N as f64,
        });
    }
    let masks: Vec<(u32, bool)> = (0u32..1 << n)
        .filter_map(|mask| {
            let k = mask.count_ones() as usize;
            (2 * k >= n).then_some((mask, 2 * k == n))
        })
        .collect();
    let len = m + 1;
    let chunks = samples.div_ceil(CHUNK);
    let sums = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Sums> {
            let mut rng = substream(seed, c as u64);
            let mut sums = Sums::zero(len);
            let mut x = vec![0u128; len];
            let mut b = vec![0u128; len];
            for _ in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let g = gen_config_multigraph_with(n, m, &mut rng)?;
                x.fill(0);
                b.fill(0);
                for &(mask, bal) in &masks {
                    if let Some(z) = locally_optimal_cut(g.edges(), n, mask) {
                        x[z] += 1;
                        if bal {
                            b[z] += 1;
                        }
                    }
                }
                for z in 0..len {
                    sums.x[z] += x[z];
                    sums.x2[z] += x[z] * x[z];
                    sums.b[z] += b[z];
                    sums.b2[z] += b[z] * b[z];
                    sums.b4[z] += b[z] * b[z] * b[z] * b[z];
                }
            }
            Ok(sums)
        })
        .try_reduce(|| Sums::zero(len), |a, b| Ok(a.add(b)))?;

    let first = (0..len)
        .map(|z| McEstimate::from_sums(sums.x[z], sums.x2[z], samples))
        .collect();
    let (balanced, second) = if n.is_multiple_of(2) {
        (
            (0..len)
                .map(|z| McEstimate::from_sums(sums.b[z], sums.b2[z], samples))
                .collect(),
            (0..len)
                .map(|z| McEstimate::from_sums(sums.b2[z], sums.b4[z], samples))
                .collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(MomentEstimates {
        n,
        m,
        seed,
        first,
        balanced,
        second,
    })
}

fn estimate_at(list: &[McEstimate], q: &MomentQuery, samples: usize) -> McEstimate {
    list.get(q.zn).copied().unwrap_or(McEstimate {
        mean: 0.0,
        std_error: 0.0,
        samples,
    })
}

/// Estimate of `E[X(zn)]`; see [`moment_mc`].
pub fn first_moment_mc(q: &MomentQuery, samples: usize, seed: u64) -> Result<McEstimate> {
    let all = moment_mc(q.n, q.m, samples, seed)?;
    Ok(estimate_at(&all.first, q, samples))
}

/// Estimate of `E[X_bal(zn)²]`; see [`moment_mc`].
pub fn second_moment_mc(q: &MomentQuery, samples: usize, seed: u64) -> Result<McEstimate> {
    if q.n % 2 == 1 {
        return Err(Error::domain(format!(
            "balanced cuts need even n, got {}",
            q.n
        )));
    }
    let all = moment_mc(q.n, q.m, samples, seed)?;
    Ok(estimate_at(&all.second, q, samples))
}
