//! First-moment exponent `w(x)` and the upper-bound constant `x_u`.
//!
//! For a cut of size `c/2 + x√c` (per vertex), the tilt `θ(x)` solves
//! `θ + e^{-(2x+θ)²} / (√π (1 + erf(2x+θ))) = 0` and
//! `w(x) = -2x² + θ² + log(1 + erf(2x+θ))`.

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{erfcx, ln_one_plus_erf};
use crate::roots::Bisection;

/// Range of the normalized cut excess known a priori to contain the answer.
pub const X_RANGE: (f64, f64) = (0.37613, 0.58870);

/// Residual tolerance used when callers do not pick one.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstMomentSolution {
    pub x: f64,
    pub theta: f64,
    pub w: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub x_u: f64,
    pub theta_u: f64,
    /// `w(x_u)`, zero up to the tolerance.
    pub w: f64,
    pub iterations: usize,
}

/// `w₁(x, θ) = -2x² + θ² + log(1 + erf(2x + θ))`.
pub fn w1(x: f64, theta: f64) -> f64 {
    -2.0 * x * x + theta * theta + ln_one_plus_erf(2.0 * x + theta)
}

/// `w₂(x, θ) = θ + e^{-(2x+θ)²} / (√π (1 + erf(2x+θ)))`, written through
/// `erfcx` so the ratio never forms `0/0`.
pub fn w2(x: f64, theta: f64) -> f64 {
    let v = 2.0 * x + theta;
    theta + 1.0 / (PI.sqrt() * erfcx(-v))
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "x = {x} must be positive and finite"
        )));
    }
    if x < X_RANGE.0 || x > X_RANGE.1 {
        warn!("x = {x} lies outside [{}, {}]", X_RANGE.0, X_RANGE.1);
    }
    Ok(())
}

/// Solves `w₂(x, θ) = 0` for `θ ∈ (-x, 0)` by bisection.
pub fn solve_theta(x: f64, tol: f64) -> Result<FirstMomentSolution> {
    check_x(x)?;
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let root = Bisection::new(0.0, tol).solve("theta(x)", -x, 0.0, |t| Ok(w2(x, t)))?;
    Ok(FirstMomentSolution {
        x,
        theta: root.x,
        w: w1(x, root.x),
        residual: root.f,
    })
}

/// `w(x) = w₁(x, θ(x))`.
pub fn w_value(x: f64) -> Result<f64> {
    Ok(solve_theta(x, DEFAULT_TOL)?.w)
}

/// `w'(x) = -4(x + θ(x))`, from the envelope theorem.
pub fn w_derivative(x: f64) -> Result<f64> {
    let s = solve_theta(x, DEFAULT_TOL)?;
    Ok(-4.0 * (x + s.theta))
}

/// Root of `w` on [`X_RANGE`]; `w` is strictly decreasing there.
pub fn solve_xu(tol: f64) -> Result<UpperBound> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let (lo, hi) = X_RANGE;
    let root = Bisection::new(tol, 0.0).solve("x_u", lo, hi, w_value)?;
    let s = solve_theta(root.x, DEFAULT_TOL)?;
    Ok(UpperBound {
        x_u: root.x,
        theta_u: s.theta,
        w: s.w,
        iterations: root.iterations,
    })
}
