//! Exact balls-into-bins probabilities by dynamic programming over bins.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CELL_BUDGET: f64 = 1e8;

/// `bins` bins receiving `balls[j]` labeled balls of color `j`, each ball
/// independently uniform.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccupancySpec {
    pub bins: usize,
    pub balls: Vec<usize>,
}

impl OccupancySpec {
    pub fn new(bins: usize, balls: Vec<usize>) -> Self {
        OccupancySpec { bins, balls }
    }

    /// Number of DP cells: bins times the number of partial-count states.
    pub fn cells(&self) -> f64 {
        self.balls
            .iter()
            .fold(self.bins.max(1) as f64, |acc, &b| acc * (b + 1) as f64)
    }

    fn check(&self, colors: usize, budget: f64) -> Result<()> {
        if self.balls.len() != colors {
            return Err(Error::domain(format!(
                "expected {colors} ball counts, got {}",
                self.balls.len()
            )));
        }
        if self.bins == 0 {
            return Err(Error::domain("need at least one bin"));
        }
        let cells = self.cells();
        if cells > budget {
            return Err(Error::Resource {
                what: "occupancy DP cells",
                needed: cells,
                budget,
            });
        }
        Ok(())
    }
}

pub(crate) fn binomial_table(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Number of assignments of the labeled balls to `bins` bins such that every
/// bin's color counts satisfy `ok`.
fn count_assignments(spec: &OccupancySpec, ok: impl Fn(&[usize]) -> bool) -> BigUint {
    let d = spec.balls.len();
    let dims: Vec<usize> = spec.balls.iter().map(|&b| b + 1).collect();
    let size: usize = dims.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = vec![0; d];
        for j in (0..d).rev() {
            v[j] = idx % dims[j];
            idx /= dims[j];
        }
        v
    };
    let encode = |v: &[usize]| v.iter().zip(&dims).fold(0, |acc, (&x, &k)| acc * k + x);

    let max_ball = spec.balls.iter().copied().max().unwrap_or(0);
    let binom = binomial_table(max_ball);
    let states: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let allowed: Vec<&Vec<usize>> = states.iter().filter(|t| ok(t)).collect();

    // f[u] = ways to place `u` (per color) balls, already chosen, into the
    // bins processed so far
    let mut f = vec![BigUint::zero(); size];
    f[0] = BigUint::one();
    for _ in 0..spec.bins {
        let mut next = vec![BigUint::zero(); size];
        for (ui, u) in states.iter().enumerate() {
            let mut acc = BigUint::zero();
            for t in &allowed {
                if t.iter().zip(u).any(|(a, b)| a > b) {
                    continue;
                }
                let rest: Vec<usize> = u.iter().zip(t.iter()).map(|(a, b)| a - b).collect();
                let prev = &f[encode(&rest)];
                if prev.is_zero() {
                    continue;
                }
                let mut w = prev.clone();
                for j in 0..d {
                    w *= &binom[u[j]][t[j]];
                }
                acc += w;
            }
            next[ui] = acc;
        }
        f = next;
    }
    f.swap_remove(size - 1)
}

fn probability(spec: &OccupancySpec, ok: impl Fn(&[usize]) -> bool) -> BigRational {
    let total: usize = spec.balls.iter().sum();
    let denom = BigUint::from(spec.bins).pow(total as u32);
    BigRational::new(
        BigInt::from(count_assignments(spec, ok)),
        BigInt::from(denom),
    )
}

/// `P[E_i ≥ F_i for every bin i]` with `E` from `balls[0]` and `F` from
/// `balls[1]`.
pub fn k2_exact(spec: &OccupancySpec) -> Result<BigRational> {
    k2_exact_with(spec, DEFAULT_CELL_BUDGET)
}

pub fn k2_exact_with(spec: &OccupancySpec, budget: f64) -> Result<BigRational> {
    spec.check(2, budget)?;
    Ok(probability(spec, |t| t[0] >= t[1]))
}

/// `P[E⁽²⁾_i - E⁽⁴⁾_i ≥ |E⁽¹⁾_i - E⁽³⁾_i| for every bin i]`.
pub fn k4_exact(spec: &OccupancySpec) -> Result<BigRational> {
    k4_exact_with(spec, DEFAULT_CELL_BUDGET)
}

pub fn k4_exact_with(spec: &OccupancySpec, budget: f64) -> Result<BigRational> {
    spec.check(4, budget)?;
    Ok(probability(spec, k4_condition))
}

pub(crate) fn k4_condition(t: &[usize]) -> bool {
    t[1] as i64 - t[3] as i64 >= (t[0] as i64 - t[2] as i64).abs()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonIdentity {
    /// Multinomial probability of the occupancy vector.
    pub lhs: BigRational,
    /// Independent Poisson occupancies conditioned on their sum.
    pub rhs: BigRational,
}

/// Both sides of the Poissonization identity for `n` bins, `mu` balls and
/// occupancy `t`.
pub fn poissonization_identity(n: usize, mu: usize, t: &[usize]) -> Result<PoissonIdentity> {
    if n == 0 || t.len() != n {
        return Err(Error::domain(format!(
            "need {n} >= 1 occupancies, got {}",
            t.len()
        )));
    }
    if t.iter().sum::<usize>() != mu {
        return Err(Error::domain(format!(
            "occupancies sum to {}, not {mu}",
            t.iter().sum::<usize>()
        )));
    }
    let fact = factorials(mu);
    let int = |x: &BigUint| BigInt::from(x.clone());

    let mut lhs_den = BigUint::from(n).pow(mu as u32);
    for &ti in t {
        lhs_den *= &fact[ti];
    }
    let lhs = BigRational::new(int(&fact[mu]), BigInt::from(lhs_den));

    // rate λ = 3/2 per bin; the e^{-nλ} factors cancel between numerator and
    // denominator
    let lambda = BigRational::new(3.into(), 2.into());
    let mut joint = BigRational::one();
    for &ti in t {
        joint *= pow(&lambda, ti) / BigRational::from_integer(int(&fact[ti]));
    }
    let total_rate = lambda * BigRational::from_integer(BigInt::from(n));
    let marginal = pow(&total_rate, mu) / BigRational::from_integer(int(&fact[mu]));
    Ok(PoissonIdentity {
        lhs,
        rhs: joint / marginal,
    })
}

pub(crate) fn factorials(max: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::one(); max + 1];
    for i in 1..=max {
        f[i] = &f[i - 1] * BigUint::from(i);
    }
    f
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}
