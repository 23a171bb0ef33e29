//! Gaussian special functions and the tilted wedge integrals `Q` and `P`.
//!
//! `Q(θ, a₁, a₂) = ∫₀^∞ ∫_{a₁z₂}^∞ exp(-((z₁-θ-a₂)² + z₂²)/2) dz₁ dz₂`. The inner
//! integral is done analytically, leaving
//! `√(π/2) ∫₀^∞ exp(-z²/2) erfc((a₁z - θ - a₂)/√2) dz`, which is integrated in
//! the log domain. Everything downstream consumes `ln Q` / `ln P`.

pub mod quad;

use std::f64::consts::{FRAC_2_SQRT_PI, PI, SQRT_2};

use errorfunctions::RealErrorFunctions;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper limit replacing ∞ on half-line integrals (standard deviations).
    pub truncation: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            truncation: 40.0,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if !(self.truncation >= 10.0) || !self.truncation.is_finite() {
            return Err(Error::domain(
                "quadrature truncation must be finite and at least 10",
            ));
        }
        Ok(())
    }
}

/// Parameters of the wedge integral: tilt `theta`, slope `a1 >= 0`, shift `a2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeParams {
    pub theta: f64,
    pub a1: f64,
    pub a2: f64,
}

impl WedgeParams {
    pub fn new(theta: f64, a1: f64, a2: f64) -> Result<Self> {
        let p = WedgeParams { theta, a1, a2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta.is_finite() && self.a1.is_finite() && self.a2.is_finite()) {
            return Err(Error::domain("wedge parameters must be finite"));
        }
        if self.a1 < 0.0 {
            return Err(Error::domain(format!(
                "wedge slope a1 = {} is negative",
                self.a1
            )));
        }
        Ok(())
    }

    /// `θ + a₂`, the only combination in which the two enter `Q`.
    #[inline]
    pub fn offset(&self) -> f64 {
        self.theta + self.a2
    }
}

/// A positive quantity together with its logarithm. `ln_value` stays finite
/// when `value` underflows to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub value: f64,
    pub ln_value: f64,
}

impl LogValue {
    fn from_ln(ln_value: f64) -> Self {
        LogValue {
            value: ln_value.exp(),
            ln_value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfFamily {
    pub erf: f64,
    pub ln_erfc: f64,
}

pub fn erf_family(u: f64) -> Result<ErfFamily> {
    if !u.is_finite() {
        return Err(Error::domain(format!("erf argument {u} is not finite")));
    }
    Ok(ErfFamily {
        erf: erf(u),
        ln_erfc: ln_erfc(u),
    })
}

#[inline]
pub fn erf(u: f64) -> f64 {
    RealErrorFunctions::erf(u)
}

#[inline]
pub fn erfc(u: f64) -> f64 {
    RealErrorFunctions::erfc(u)
}

/// Scaled complementary error function `exp(u²) erfc(u)`.
#[inline]
pub fn erfcx(u: f64) -> f64 {
    RealErrorFunctions::erfcx(u)
}

/// `log(erfc(u))`, through the scaled function `erfcx(u) = exp(u²) erfc(u)`
/// for positive `u` so it never underflows.
#[inline]
pub fn ln_erfc(u: f64) -> f64 {
    if u > 0.5 {
        erfcx(u).ln() - u * u
    } else {
        erfc(u).ln()
    }
}

/// `log(1 + erf(v))`.
#[inline]
pub fn ln_one_plus_erf(v: f64) -> f64 {
    ln_erfc(-v)
}

/// `-d/du log erfc(u) = (2/√π) / erfcx(u)`.
#[inline]
fn erfc_log_slope(u: f64) -> f64 {
    FRAC_2_SQRT_PI / erfcx(u)
}

/// Breakpoints for `z ↦ -z²/2 + ln erfc((a₁z - s)/√2)` on `[0, limit]`: a
/// geometric ladder starting at the decay length at the origin, plus the
/// point where the erfc factor switches off.
fn wedge_breakpoints(a1: f64, s: f64, limit: f64) -> Vec<f64> {
    let slope = a1 / SQRT_2 * erfc_log_slope(-s / SQRT_2);
    let mut h = if slope > 1.0 { 1.0 / slope } else { 1.0 };
    let mut pts = vec![0.0];
    while h < limit {
        pts.push(h);
        h *= 2.0;
    }
    pts.push(limit);
    if a1 > 0.0 {
        let knee = s / a1;
        if knee > 0.0 && knee < limit {
            pts.push(knee);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// The wedge integral `Q(θ, a₁, a₂)`.
pub fn q_integral(p: &WedgeParams, q: &QuadSpec) -> Result<LogValue> {
    p.validate()?;
    let s = p.offset();
    let a1 = p.a1;
    let pts = wedge_breakpoints(a1, s, q.truncation);
    let ln_integrand = |z: f64| -0.5 * z * z + ln_erfc((a1 * z - s) / SQRT_2);
    let r = quad::integrate_log(ln_integrand, &pts, q.abs_tol, q.rel_tol, MAX_INTERVALS)?;
    Ok(LogValue::from_ln(0.5 * (PI / 2.0).ln() + r.ln_value))
}

/// `P(θ, a₁, a₂) = (1/π) exp(θ²/2) Q(θ, a₁, a₂)`.
pub fn p_value(p: &WedgeParams, q: &QuadSpec) -> Result<LogValue> {
    let lq = q_integral(p, q)?;
    Ok(LogValue::from_ln(
        0.5 * p.theta * p.theta - PI.ln() + lq.ln_value,
    ))
}

/// `∫₀^∞ exp(-(z² + (a₁z - θ - a₂)²)/2) dz`, by completing the square.
pub fn half_gaussian_cross(p: &WedgeParams) -> Result<LogValue> {
    p.validate()?;
    let s = p.offset();
    let k = 1.0 + p.a1 * p.a1;
    let ln = 0.5 * (PI / (2.0 * k)).ln() - s * s / (2.0 * k)
        + ln_one_plus_erf(p.a1 * s / (2.0 * k).sqrt());
    Ok(LogValue::from_ln(ln))
}

/// `∂ log P / ∂θ = θ + H/Q` with `H` from [`half_gaussian_cross`].
pub fn dlog_p_dtheta(p: &WedgeParams, q: &QuadSpec) -> Result<f64> {
    let lq = q_integral(p, q)?;
    let lh = half_gaussian_cross(p)?;
    Ok(p.theta + (lh.ln_value - lq.ln_value).exp())
}

/// `ℙ(Z₁ + b₃ ≥ b₂ |Z₂ + b₁|)` for independent standard normals.
pub fn wedge_probability(b1: f64, b2: f64, b3: f64) -> Result<f64> {
    if !(b1.is_finite() && b2.is_finite() && b3.is_finite()) {
        return Err(Error::domain("wedge probability arguments must be finite"));
    }
    if b2 < 0.0 {
        return Err(Error::domain(format!("b2 = {b2} is negative")));
    }
    let q = QuadSpec::default();
    let lim = q.truncation;
    // ½ erfc((b₂|z+b₁| - b₃)/√2) against the standard normal density
    let ln_integrand = |z: f64| {
        -0.5 * z * z - 0.5 * (2.0 * PI).ln() - std::f64::consts::LN_2
            + ln_erfc((b2 * (z + b1).abs() - b3) / SQRT_2)
    };
    let mut pts = vec![-lim, -1.0, 0.0, 1.0, lim];
    if -b1 > -lim && -b1 < lim {
        pts.push(-b1);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let r = quad::integrate_log(ln_integrand, &pts, 1e-15, q.rel_tol, MAX_INTERVALS)?;
    Ok(r.ln_value.exp())
}
