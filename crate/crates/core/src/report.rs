//! Assembled bound reports and the β-scan CSV.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::first_moment;
use crate::second_moment::{self, ScanRow, SecondMomentConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bisection tolerance for `x_u`.
    pub tol: f64,
    /// Bisection tolerance for `x_l`.
    pub tol_x: f64,
    pub gap_tol: f64,
    pub saddle_tol: f64,
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    pub beta_min: f64,
    pub beta_grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub xu_iterations: usize,
    /// `w(x_u)`
    pub w_at_xu: f64,
    /// Final `x_l` bracket and the gaps measured at its ends.
    pub xl_below: f64,
    pub xl_above: f64,
    pub gap_below: f64,
    pub gap_above: f64,
    pub xl_classifications: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub x_u: f64,
    pub theta_u: f64,
    pub x_l: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxcut_interval: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ising_interval: Option<(f64, f64)>,
    pub tolerances: Tolerances,
    pub solver: SolverInfo,
}

/// `(c/2 + x_l√c, c/2 + x_u√c)`
pub fn maxcut_interval(c: f64, x_l: f64, x_u: f64) -> (f64, f64) {
    let r = c.sqrt();
    (c / 2.0 + x_l * r, c / 2.0 + x_u * r)
}

/// `(-2x_u√c, -2x_l√c)`
pub fn ising_interval(c: f64, x_l: f64, x_u: f64) -> (f64, f64) {
    let r = c.sqrt();
    (-2.0 * x_u * r, -2.0 * x_l * r)
}

pub fn bounds(c: Option<f64>, tol: f64, tol_x: f64) -> Result<BoundsReport> {
    bounds_with(c, tol, tol_x, &SecondMomentConfig::default())
}

pub fn bounds_with(
    c: Option<f64>,
    tol: f64,
    tol_x: f64,
    cfg: &SecondMomentConfig,
) -> Result<BoundsReport> {
    if let Some(c) = c {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::domain(format!("c = {c} must be positive")));
        }
    }
    if !(tol > 0.0 && tol_x > 0.0) {
        return Err(Error::domain("tolerances must be positive"));
    }
    let upper = first_moment::solve_xu(tol)?;
    let lower = second_moment::solve_xl_with(tol_x, cfg)?;
    debug_assert!(lower.x_l < upper.x_u);
    Ok(BoundsReport {
        x_u: upper.x_u,
        theta_u: upper.theta_u,
        x_l: lower.x_l,
        c,
        maxcut_interval: c.map(|c| maxcut_interval(c, lower.x_l, upper.x_u)),
        ising_interval: c.map(|c| ising_interval(c, lower.x_l, upper.x_u)),
        tolerances: Tolerances {
            tol,
            tol_x,
            gap_tol: cfg.gap_tol,
            saddle_tol: cfg.tol,
            quad_abs_tol: cfg.quad.abs_tol,
            quad_rel_tol: cfg.quad.rel_tol,
            beta_min: cfg.beta_min,
            beta_grid: cfg.grid,
        },
        solver: SolverInfo {
            xu_iterations: upper.iterations,
            w_at_xu: upper.w,
            xl_below: lower.below,
            xl_above: lower.above,
            gap_below: lower.gap_below,
            gap_above: lower.gap_above,
            xl_classifications: lower.classifications,
        },
    })
}

pub const SCAN_HEADER: [&str; 8] = ["x", "beta", "t", "theta1", "theta2", "W", "two_w", "gap"];

/// Writes scan rows as CSV; failed solves get `NA` in every numeric column
/// after `beta`.
pub fn write_scan_csv<W: Write>(out: W, rows: &[ScanRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(SCAN_HEADER).map_err(io)?;
    let cell = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |v| v.to_string());
    for r in rows {
        w.write_record([
            r.x.to_string(),
            r.beta.to_string(),
            cell(r.t),
            cell(r.theta1),
            cell(r.theta2),
            cell(r.w_big),
            cell(r.two_w),
            cell(r.gap),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
