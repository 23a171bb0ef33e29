//! Exact finite-`n` first and second moments of the number of locally optimal
//! cuts of a given size in the configuration multigraph.
//!
//! Loops count as two same-side clone incidences in the local optimality
//! test, which is what the occupancy factors `K` measure.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::occupancy::{binomial_table, factorials, k2_exact, k4_exact, OccupancySpec};
use crate::error::{Error, Result};

pub const FIRST_EXACT_MAX: usize = 12;
pub const SECOND_EXACT_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentQuery {
    pub n: usize,
    /// Edge count.
    pub m: usize,
    /// Target cut size.
    pub zn: usize,
}

impl MomentQuery {
    pub fn new(n: usize, m: usize, zn: usize) -> Self {
        MomentQuery { n, m, zn }
    }

    fn check(&self, limit: usize, what: &'static str) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("need at least one vertex"));
        }
        let size = self.n.max(self.m);
        if size > limit {
            return Err(Error::Resource {
                what,
                needed: size as f64,
                budget: limit as f64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstMomentExact {
    /// Expected number of `(V₁, V₂)` with `|V₁| ≥ |V₂|`, cut size `zn`, and
    /// every vertex locally optimal.
    pub total: BigRational,
    /// The `|V₁| = |V₂|` part of `total` (zero for odd `n`).
    pub balanced: BigRational,
}

struct Tables {
    fact: Vec<BigUint>,
    binom: Vec<Vec<BigUint>>,
    k2: HashMap<(usize, usize, usize), BigRational>,
    k4: HashMap<(usize, [usize; 4]), BigRational>,
}

impl Tables {
    fn new(size: usize) -> Self {
        Tables {
            fact: factorials(size),
            binom: binomial_table(size),
            k2: HashMap::new(),
            k4: HashMap::new(),
        }
    }

    /// Number of perfect matchings on `2j` points.
    fn pairings(&self, two_j: usize) -> BigUint {
        let j = two_j / 2;
        &self.fact[two_j] / (&self.fact[j] * (BigUint::one() << j))
    }

    fn k2(&mut self, bins: usize, a: usize, b: usize) -> Result<BigRational> {
        if bins == 0 {
            return Ok(indicator(a == 0 && b == 0));
        }
        if let Some(v) = self.k2.get(&(bins, a, b)) {
            return Ok(v.clone());
        }
        let v = k2_exact(&OccupancySpec::new(bins, vec![a, b]))?;
        self.k2.insert((bins, a, b), v.clone());
        Ok(v)
    }

    fn k4(&mut self, bins: usize, mu: [usize; 4]) -> Result<BigRational> {
        if bins == 0 {
            return Ok(indicator(mu.iter().all(|&x| x == 0)));
        }
        if let Some(v) = self.k4.get(&(bins, mu)) {
            return Ok(v.clone());
        }
        let v = k4_exact(&OccupancySpec::new(bins, mu.to_vec()))?;
        self.k4.insert((bins, mu), v.clone());
        Ok(v)
    }
}

fn indicator(b: bool) -> BigRational {
    if b {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `E[X(zn)]` summed over part sizes `|V₁| = k₁ ≥ n - k₁` and internal edge
/// splits `i₁ + i₂ = m - zn`.
pub fn first_moment_exact(q: &MomentQuery) -> Result<FirstMomentExact> {
    q.check(FIRST_EXACT_MAX, "first-moment exact size")?;
    let (n, m, zn) = (q.n, q.m, q.zn);
    let mut total = BigRational::zero();
    let mut balanced = BigRational::zero();
    if zn > m {
        return Ok(FirstMomentExact { total, balanced });
    }
    let mut tab = Tables::new(2 * m + n);
    let internal = m - zn;
    let den = BigUint::from(n).pow(2 * m as u32) * tab.pairings(2 * m);
    for k1 in n.div_ceil(2)..=n {
        let k2 = n - k1;
        let mut part = BigRational::zero();
        for i1 in 0..=internal {
            let i2 = internal - i1;
            let kk = tab.k2(k1, zn, 2 * i1)? * tab.k2(k2, zn, 2 * i2)?;
            if kk.is_zero() {
                continue;
            }
            let num = &tab.binom[n][k1]
                * &tab.fact[2 * m]
                * BigUint::from(k1).pow((2 * i1 + zn) as u32)
                * BigUint::from(k2).pow((2 * i2 + zn) as u32)
                * tab.pairings(2 * i1)
                * tab.pairings(2 * i2);
            let split = &tab.fact[2 * i1] * &tab.fact[2 * i2] * &tab.fact[zn];
            part += ratio(num, split * &den) * kk;
        }
        if 2 * k1 == n {
            balanced = part.clone();
        }
        total += part;
    }
    Ok(FirstMomentExact { total, balanced })
}

/// Edge counts between parts `V₁..V₄` of the overlap of two balanced cuts
/// `A = V₁ ∪ V₂`, `B = V₁ ∪ V₃`.
#[derive(Debug, Clone, Copy)]
struct PairCounts {
    diag: [usize; 4],
    /// `z₁₂, z₁₃, z₁₄, z₂₃, z₂₄, z₃₄`
    off: [usize; 6],
}

impl PairCounts {
    fn z(&self, j: usize, k: usize) -> usize {
        let (a, b) = (j.min(k), j.max(k));
        match (a, b) {
            (0, 1) => self.off[0],
            (0, 2) => self.off[1],
            (0, 3) => self.off[2],
            (1, 2) => self.off[3],
            (1, 3) => self.off[4],
            (2, 3) => self.off[5],
            _ => self.diag[a],
        }
    }

    fn clones(&self, j: usize) -> usize {
        2 * self.diag[j]
            + (0..4)
                .filter(|&k| k != j)
                .map(|k| self.z(j, k))
                .sum::<usize>()
    }

    /// Occupancy colors per part, ordered `(E₁, E₂, E₃, E₄)` so that part `j`
    /// is locally optimal for both cuts iff `E₂ - E₄ ≥ |E₁ - E₃|` per vertex.
    fn k4_args(&self, j: usize) -> [usize; 4] {
        let z = |a, b| self.z(a, b);
        match j {
            0 => [z(0, 1), z(0, 3), z(0, 2), 2 * self.diag[0]],
            1 => [z(0, 1), z(1, 2), z(1, 3), 2 * self.diag[1]],
            2 => [z(2, 3), z(1, 2), z(0, 2), 2 * self.diag[2]],
            _ => [z(2, 3), z(0, 3), z(1, 3), 2 * self.diag[3]],
        }
    }
}

/// Calls `visit` for every composition of `total` into `parts` parts.
fn compositions(
    total: usize,
    parts: usize,
    prefix: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if parts == 1 {
        prefix.push(total);
        let r = visit(prefix);
        prefix.pop();
        return r;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, visit)?;
        prefix.pop();
    }
    Ok(())
}

/// `E[X_bal(zn)²]`: expected number of ordered pairs of balanced locally
/// optimal cuts of size `zn`, summed over every overlap `|V₁| = s ∈ [0, n/2]`.
pub fn second_moment_exact(q: &MomentQuery) -> Result<BigRational> {
    q.check(SECOND_EXACT_MAX, "second-moment exact size")?;
    let (n, m, zn) = (q.n, q.m, q.zn);
    if n % 2 == 1 {
        return Err(Error::domain(format!("balanced cuts need even n, got {n}")));
    }
    let mut sum = BigRational::zero();
    if zn > m {
        return Ok(sum);
    }
    let mut tab = Tables::new(2 * m + n);
    let half = n / 2;
    let den = BigUint::from(n).pow(2 * m as u32) * tab.pairings(2 * m);
    for s in 0..=half {
        let sizes = [s, half - s, half - s, s];
        let placements = &tab.fact[n]
            / (&tab.fact[s] * &tab.fact[s] * &tab.fact[half - s] * &tab.fact[half - s]);
        let mut prefix = Vec::with_capacity(10);
        compositions(m, 10, &mut prefix, &mut |z: &[usize]| {
            let pc = PairCounts {
                diag: [z[0], z[1], z[2], z[3]],
                off: [z[4], z[5], z[6], z[7], z[8], z[9]],
            };
            let cut_a = pc.z(0, 2) + pc.z(0, 3) + pc.z(1, 2) + pc.z(1, 3);
            let cut_b = pc.z(0, 1) + pc.z(0, 3) + pc.z(1, 2) + pc.z(2, 3);
            if cut_a != zn || cut_b != zn {
                return Ok(());
            }
            let mut kk = BigRational::one();
            for (j, &size) in sizes.iter().enumerate() {
                kk *= tab.k4(size, pc.k4_args(j))?;
                if kk.is_zero() {
                    return Ok(());
                }
            }
            let mut num = placements.clone() * &tab.fact[2 * m];
            let mut split = BigUint::one();
            for (j, &size) in sizes.iter().enumerate() {
                num *= BigUint::from(size).pow(pc.clones(j) as u32);
                num *= tab.pairings(2 * pc.diag[j]);
                split *= &tab.fact[2 * pc.diag[j]];
            }
            for &o in &pc.off {
                split *= &tab.fact[o];
            }
            sum += ratio(num, split * &den) * kk;
            Ok(())
        })?;
    }
    Ok(sum)
}
