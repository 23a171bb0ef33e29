//! Second-moment exponent `W(x, β)` and the lower-bound constant `x_l`.
//!
//! For an overlap profile `β ∈ (0, 1/2)` the exponent is the saddle value of
//!
//! ```text
//! F(t, θ₁, θ₂) = -t²/(2β²) - (x-t)²/(2(1/2-β)²)
//!              + 2β log P(θ₁, √((1/2-β)/β), t/β^{3/2})
//!              + 2(1/2-β) log P(θ₂, √(β/(1/2-β)), (x-t)/(1/2-β)^{3/2})
//! ```
//!
//! plus the entropy `-2β log β - 2(1/2-β) log(1/2-β)`. `F` is convex in each
//! `θ` and `G(t) = inf_θ F` is strictly concave on `[0, x]`, so the saddle is
//! found by nested bisection: each `θ` solves `∂ log P/∂θ = θ + H/Q = 0`, and
//! `t` solves `G'(t) = 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::first_moment::{self, X_RANGE};
use crate::gauss::{half_gaussian_cross, p_value, q_integral, QuadSpec, WedgeParams};
use crate::roots::Bisection;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentConfig {
    /// Residual tolerance for the saddle equations.
    pub tol: f64,
    pub quad: QuadSpec,
    /// Smallest overlap profile considered; the domain is
    /// `[beta_min, 1/2 - beta_min]`.
    pub beta_min: f64,
    /// Bracket expansion cap for the inner `θ` solves.
    pub theta_cap: f64,
    /// Coarse β grid size for the maximization over β.
    pub grid: usize,
    /// `sup_β W - 2w` above this classifies `x` as past the threshold.
    pub gap_tol: f64,
}

impl Default for SecondMomentConfig {
    fn default() -> Self {
        SecondMomentConfig {
            tol: 1e-11,
            quad: QuadSpec::default(),
            beta_min: 1e-4,
            theta_cap: 60.0,
            grid: 64,
            gap_tol: 1e-9,
        }
    }
}

/// Which end of `[0, x]` the `t` solve was clamped to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleSolution {
    pub x: f64,
    pub beta: f64,
    pub t: f64,
    pub theta1: f64,
    pub theta2: f64,
    #[serde(rename = "W")]
    pub w_big: f64,
    /// `∂ log P/∂θ₁`, `∂ log P/∂θ₂` (normalized by `Q`) and `∂F/∂t`.
    pub residuals: [f64; 3],
    pub boundary: Option<Boundary>,
}

impl SaddleSolution {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }
}

/// One half of the split: the wedge slope, the map `t ↦ shift`, and weights.
#[derive(Debug, Clone, Copy)]
struct Side {
    slope: f64,
    /// `shift = span / mass^{3/2}` where `span` is `t` or `x - t`.
    mass: f64,
}

impl Side {
    fn first(beta: f64) -> Self {
        Side {
            slope: ((0.5 - beta) / beta).sqrt(),
            mass: beta,
        }
    }

    fn second(beta: f64) -> Self {
        Side {
            slope: (beta / (0.5 - beta)).sqrt(),
            mass: 0.5 - beta,
        }
    }

    fn shift(&self, span: f64) -> f64 {
        span / self.mass.powf(1.5)
    }

    fn wedge(&self, theta: f64, span: f64) -> WedgeParams {
        WedgeParams {
            theta,
            a1: self.slope,
            a2: self.shift(span),
        }
    }
}

fn entropy(beta: f64) -> f64 {
    -2.0 * beta * beta.ln() - 2.0 * (0.5 - beta) * (0.5 - beta).ln()
}

/// `θ + H/Q` at the given wedge; strictly increasing in `θ`.
fn theta_residual(p: &WedgeParams, quad: &QuadSpec) -> Result<f64> {
    let lq = q_integral(p, quad)?;
    let lh = half_gaussian_cross(p)?;
    Ok(p.theta + (lh.ln_value - lq.ln_value).exp())
}

/// Minimizer of `θ ↦ log P(θ, slope, shift)`. The residual is positive at
/// `θ = 0`, so the root is negative; the bracket grows from `guess` until the
/// lower end turns negative.
fn solve_inner(
    side: Side,
    span: f64,
    guess: Option<f64>,
    cfg: &SecondMomentConfig,
) -> Result<(f64, f64)> {
    let f = |theta: f64| theta_residual(&side.wedge(theta, span), &cfg.quad);
    let (mut lo, mut hi, mut f_hi) = (-1.0f64, 0.0f64, f(0.0)?);
    if let Some(g) = guess.filter(|g| *g < 0.0) {
        let step = 1e-3 * g.abs().max(1.0);
        let up = (g + step).min(0.0);
        let f_up = f(up)?;
        if f_up > 0.0 {
            hi = up;
            f_hi = f_up;
            lo = g - step;
        } else {
            lo = up;
        }
    }
    let mut f_lo = f(lo)?;
    let mut width = (hi - lo).max(1e-3);
    while f_lo > 0.0 {
        hi = lo;
        f_hi = f_lo;
        width *= 2.0;
        lo = hi - width;
        if lo < -cfg.theta_cap {
            return Err(Error::Divergence {
                what: "inner theta solve",
                theta: lo,
            });
        }
        f_lo = f(lo)?;
    }
    let root =
        Bisection::new(0.0, 0.1 * cfg.tol).solve_with("inner theta", lo, hi, f_lo, f_hi, f)?;
    Ok((root.x, root.f))
}

fn check_args(x: f64, beta: f64, cfg: &SecondMomentConfig) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "x = {x} must be positive and finite"
        )));
    }
    if x < X_RANGE.0 || x > X_RANGE.1 {
        log::warn!("x = {x} lies outside [{}, {}]", X_RANGE.0, X_RANGE.1);
    }
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::domain(format!("beta = {beta} outside (0, 1/2)")));
    }
    if beta < cfg.beta_min || beta > 0.5 - cfg.beta_min {
        return Err(Error::domain(format!(
            "beta = {beta} closer to the boundary than beta_min = {}",
            cfg.beta_min
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    cfg.quad.validate()
}

/// `L(x, β, t, θ₁, θ₂)`: the second-moment objective at arbitrary arguments.
pub fn l_value(x: f64, beta: f64, t: f64, theta1: f64, theta2: f64) -> Result<f64> {
    l_value_with(x, beta, t, theta1, theta2, &QuadSpec::default())
}

pub fn l_value_with(
    x: f64,
    beta: f64,
    t: f64,
    theta1: f64,
    theta2: f64,
    quad: &QuadSpec,
) -> Result<f64> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::domain(format!("beta = {beta} outside (0, 1/2)")));
    }
    if !(t >= 0.0 && t <= x) {
        return Err(Error::domain(format!("t = {t} outside [0, {x}]")));
    }
    let (s1, s2) = (Side::first(beta), Side::second(beta));
    let lp1 = p_value(&s1.wedge(theta1, t), quad)?.ln_value;
    let lp2 = p_value(&s2.wedge(theta2, x - t), quad)?.ln_value;
    let m1 = s1.mass;
    let m2 = s2.mass;
    Ok(
        entropy(beta) - t * t / (2.0 * m1 * m1) - (x - t).powi(2) / (2.0 * m2 * m2)
            + 2.0 * m1 * lp1
            + 2.0 * m2 * lp2,
    )
}

struct Inner {
    theta1: f64,
    theta2: f64,
    res1: f64,
    res2: f64,
    /// `G'(t)`
    dt: f64,
}

fn inner_at(
    x: f64,
    t: f64,
    s1: Side,
    s2: Side,
    guess: (Option<f64>, Option<f64>),
    cfg: &SecondMomentConfig,
) -> Result<Inner> {
    let (theta1, res1) = solve_inner(s1, t, guess.0, cfg)?;
    let (theta2, res2) = solve_inner(s2, x - t, guess.1, cfg)?;
    let (m1, m2) = (s1.mass, s2.mass);
    let dt =
        -t / (m1 * m1) + (x - t) / (m2 * m2) - 2.0 * theta1 / m1.sqrt() + 2.0 * theta2 / m2.sqrt();
    Ok(Inner {
        theta1,
        theta2,
        res1,
        res2,
        dt,
    })
}

/// `∂F/∂t` at `t` with both tilts re-solved; strictly decreasing on `(0, x)`.
pub fn t_residual(x: f64, beta: f64, t: f64, cfg: &SecondMomentConfig) -> Result<f64> {
    check_args(x, beta, cfg)?;
    if !(t > 0.0 && t < x) {
        return Err(Error::domain(format!("t = {t} outside (0, {x})")));
    }
    inner_at(
        x,
        t,
        Side::first(beta),
        Side::second(beta),
        (None, None),
        cfg,
    )
    .map(|r| r.dt)
}

/// Saddle point `(t*, θ₁*, θ₂*)` of `F` and the value `W(x, β)` there.
pub fn solve_saddle(x: f64, beta: f64, tol: f64) -> Result<SaddleSolution> {
    let cfg = SecondMomentConfig {
        tol,
        ..Default::default()
    };
    solve_saddle_with(x, beta, &cfg)
}

pub fn solve_saddle_with(x: f64, beta: f64, cfg: &SecondMomentConfig) -> Result<SaddleSolution> {
    check_args(x, beta, cfg)?;
    let (s1, s2) = (Side::first(beta), Side::second(beta));

    // G'(0+) = +inf and G'(x-) = -inf: with zero span the inner infimum sits
    // at θ = -inf. A solve that runs past the θ cap near an end is read the
    // same way.
    let mut guess = (None, None);
    let mut probe = |t: f64| -> Result<f64> {
        match inner_at(x, t, s1, s2, guess, cfg) {
            Ok(r) => {
                guess = (Some(r.theta1), Some(r.theta2));
                Ok(r.dt)
            }
            Err(Error::Divergence { .. }) if t < 0.5 * x => Ok(f64::INFINITY),
            Err(Error::Divergence { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    };
    let root = Bisection::new(0.0, cfg.tol).solve_with(
        "saddle t",
        0.0,
        x,
        f64::INFINITY,
        f64::NEG_INFINITY,
        &mut probe,
    )?;
    let edge = 1e-9 * x;
    let boundary = if root.x <= edge {
        Some(Boundary::Lower)
    } else if root.x >= x - edge {
        Some(Boundary::Upper)
    } else {
        None
    };
    let t = root.x;
    let inner = inner_at(x, t, s1, s2, guess, cfg)?;

    let w_big = l_value_with(x, beta, t, inner.theta1, inner.theta2, &cfg.quad)?;
    Ok(SaddleSolution {
        x,
        beta,
        t,
        theta1: inner.theta1,
        theta2: inner.theta2,
        w_big,
        residuals: [
            inner.res1,
            inner.res2,
            if boundary.is_some() { 0.0 } else { inner.dt },
        ],
        boundary,
    })
}

/// `W(x, β)` with default settings.
pub fn w_big(x: f64, beta: f64) -> Result<SaddleSolution> {
    solve_saddle_with(x, beta, &SecondMomentConfig::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaMax {
    pub x: f64,
    pub beta_star: f64,
    pub w_star: f64,
    pub two_w: f64,
    /// `w_star - 2w(x)`
    pub gap: f64,
    pub grid_points: usize,
    pub failed_points: usize,
}

/// Maximizes `W(x, ·)` over `[beta_min, 1/4]` (the other half follows by
/// symmetry): coarse grid, then golden-section refinement around the best
/// grid point.
pub fn max_w_over_beta(x: f64, grid: usize, tol: f64) -> Result<BetaMax> {
    let cfg = SecondMomentConfig {
        grid,
        ..Default::default()
    };
    max_w_over_beta_with(x, tol, &cfg)
}

pub fn max_w_over_beta_with(x: f64, tol: f64, cfg: &SecondMomentConfig) -> Result<BetaMax> {
    if cfg.grid < 64 {
        return Err(Error::domain(format!(
            "beta grid of {} points; need at least 64",
            cfg.grid
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let two_w = 2.0 * first_moment::solve_theta(x, first_moment::DEFAULT_TOL)?.w;
    let n = cfg.grid;
    let (lo, hi) = (cfg.beta_min, 0.25);
    let betas: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let values: Vec<Option<f64>> = betas
        .par_iter()
        .map(|&b| match solve_saddle_with(x, b, cfg) {
            Ok(s) => Some(s.w_big),
            Err(e) => {
                log::debug!("W({x}, {b}) failed: {e}");
                None
            }
        })
        .collect();
    let failed = values.iter().filter(|v| v.is_none()).count();
    if (n - failed) * 10 < n * 9 {
        return Err(Error::Convergence {
            what: "beta grid",
            achieved: failed as f64 / n as f64,
        });
    }
    let (best_idx, best_val) = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .fold((usize::MAX, f64::NEG_INFINITY), |acc, (i, v)| {
            if v > acc.1 {
                (i, v)
            } else {
                acc
            }
        });

    let a = betas[best_idx.saturating_sub(1)];
    let b = betas[(best_idx + 1).min(n - 1)];
    let w_at = |beta: f64| solve_saddle_with(x, beta, cfg).map(|s| s.w_big);
    let (mut beta_star, mut w_star) = (betas[best_idx], best_val);
    if let Ok((bb, wb)) = golden_max(a, b, tol, w_at) {
        if wb > w_star {
            beta_star = bb;
            w_star = wb;
        }
    }
    Ok(BetaMax {
        x,
        beta_star,
        w_star,
        two_w,
        gap: w_star - two_w,
        grid_points: n,
        failed_points: failed,
    })
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
fn golden_max<F>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub x_l: f64,
    /// Largest `x` classified at or below the threshold, and its gap.
    pub below: f64,
    pub gap_below: f64,
    /// Smallest `x` classified above the threshold, and its gap.
    pub above: f64,
    pub gap_above: f64,
    pub x_u: f64,
    pub classifications: usize,
}

/// Bisection on `x ∈ [0.37613, x_u]` for the point where `sup_β W(x, β)`
/// leaves `2w(x)`.
pub fn solve_xl(tol_x: f64) -> Result<LowerBound> {
    solve_xl_with(tol_x, &SecondMomentConfig::default())
}

pub fn solve_xl_with(tol_x: f64, cfg: &SecondMomentConfig) -> Result<LowerBound> {
    if !(tol_x > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let x_u = first_moment::solve_xu(1e-12)?.x_u;
    let beta_tol = 1e-6;
    let classify = |x: f64| -> Result<(bool, f64)> {
        let m = max_w_over_beta_with(x, beta_tol, cfg)?;
        log::info!(
            "x = {x:.8}: gap = {:.3e} at beta = {:.6}",
            m.gap,
            m.beta_star
        );
        Ok((m.gap > cfg.gap_tol, m.gap))
    };
    let (mut lo, mut hi) = (X_RANGE.0, x_u);
    let (lo_above, mut gap_lo) = classify(lo)?;
    let (hi_above, mut gap_hi) = classify(hi)?;
    let mut count = 2;
    match (lo_above, hi_above) {
        (false, true) => {}
        (true, false) => {
            return Err(Error::Inconsistent {
                above: lo,
                below: hi,
            })
        }
        _ => {
            return Err(Error::Bracket {
                what: "x_l",
                lo,
                hi,
                f_lo: gap_lo,
                f_hi: gap_hi,
            })
        }
    }
    while hi - lo > tol_x {
        let mid = 0.5 * (lo + hi);
        let (above, gap) = classify(mid)?;
        count += 1;
        if above {
            hi = mid;
            gap_hi = gap;
        } else {
            lo = mid;
            gap_lo = gap;
        }
    }
    Ok(LowerBound {
        x_l: 0.5 * (lo + hi),
        below: lo,
        gap_below: gap_lo,
        above: hi,
        gap_above: gap_hi,
        x_u,
        classifications: count,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub x: f64,
    pub beta: f64,
    pub t: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    #[serde(rename = "W")]
    pub w_big: Option<f64>,
    pub two_w: Option<f64>,
    pub gap: Option<f64>,
    /// Solver error for this β, when the solve failed.
    pub failure: Option<String>,
}

impl ScanRow {
    fn solved(s: &SaddleSolution, two_w: f64) -> Self {
        ScanRow {
            x: s.x,
            beta: s.beta,
            t: Some(s.t),
            theta1: Some(s.theta1),
            theta2: Some(s.theta2),
            w_big: Some(s.w_big),
            two_w: Some(two_w),
            gap: Some(s.w_big - two_w),
            failure: None,
        }
    }

    fn failed(x: f64, beta: f64, two_w: Option<f64>, err: &Error) -> Self {
        ScanRow {
            x,
            beta,
            t: None,
            theta1: None,
            theta2: None,
            w_big: None,
            two_w,
            gap: None,
            failure: Some(err.to_string()),
        }
    }
}

/// `W(x, β)` on `steps` evenly spaced β in `[beta_min, beta_max]`. Failed
/// solves stay in the output as rows without numbers.
pub fn scan(x: f64, beta_min: f64, beta_max: f64, steps: usize) -> Result<Vec<ScanRow>> {
    if !(beta_min > 0.0 && beta_min < beta_max && beta_max < 0.5) {
        return Err(Error::domain(format!(
            "need 0 < beta_min < beta_max < 1/2, got [{beta_min}, {beta_max}]"
        )));
    }
    if steps == 0 {
        return Err(Error::domain("scan needs at least one step"));
    }
    let cfg = SecondMomentConfig {
        beta_min: beta_min.min(SecondMomentConfig::default().beta_min),
        ..Default::default()
    };
    let two_w = first_moment::solve_theta(x, first_moment::DEFAULT_TOL).map(|s| 2.0 * s.w);
    let betas: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                beta_min
            } else {
                beta_min + (beta_max - beta_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    Ok(betas
        .par_iter()
        .map(|&beta| match (&two_w, solve_saddle_with(x, beta, &cfg)) {
            (Ok(tw), Ok(s)) => ScanRow::solved(&s, *tw),
            (Ok(tw), Err(e)) => ScanRow::failed(x, beta, Some(*tw), &e),
            (Err(e), _) => ScanRow::failed(x, beta, None, e),
        })
        .collect())
}
