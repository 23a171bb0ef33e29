//! Bracketed bisection shared by the moment solvers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Bisection {
    /// Stop once the bracket is narrower than this.
    pub x_tol: f64,
    /// Stop once `|f(mid)|` drops to this.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection {
            x_tol: 1e-15,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    pub f: f64,
    pub iterations: usize,
}

impl Bisection {
    pub fn new(x_tol: f64, f_tol: f64) -> Self {
        Bisection {
            x_tol,
            f_tol,
            ..Default::default()
        }
    }

    /// Finds a sign change of `f` on `[lo, hi]`. The endpoints must have
    /// opposite (or zero) signs.
    pub fn solve<F>(&self, what: &'static str, lo: f64, hi: f64, mut f: F) -> Result<Root>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let f_lo = f(lo)?;
        let f_hi = f(hi)?;
        self.solve_with(what, lo, hi, f_lo, f_hi, f)
    }

    /// Same as [`Bisection::solve`] with the endpoint values already known.
    pub fn solve_with<F>(
        &self,
        what: &'static str,
        mut lo: f64,
        mut hi: f64,
        mut f_lo: f64,
        f_hi: f64,
        mut f: F,
    ) -> Result<Root>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > 0.0 {
            return Err(Error::Bracket {
                what,
                lo,
                hi,
                f_lo,
                f_hi,
            });
        }
        if f_lo == 0.0 {
            return Ok(Root {
                x: lo,
                f: 0.0,
                iterations: 0,
            });
        }
        if f_hi == 0.0 {
            return Ok(Root {
                x: hi,
                f: 0.0,
                iterations: 0,
            });
        }
        let mut best = if f_lo.abs() < f_hi.abs() {
            Root {
                x: lo,
                f: f_lo,
                iterations: 0,
            }
        } else {
            Root {
                x: hi,
                f: f_hi,
                iterations: 0,
            }
        };
        for it in 1..=self.max_iter {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                // bracket at machine resolution
                best.iterations = it;
                return Ok(best);
            }
            let f_mid = f(mid)?;
            if f_mid.is_nan() {
                return Err(Error::Convergence {
                    what,
                    achieved: f64::NAN,
                });
            }
            if f_mid.abs() <= best.f.abs() {
                best = Root {
                    x: mid,
                    f: f_mid,
                    iterations: it,
                };
            }
            if f_mid == 0.0 || f_mid.abs() <= self.f_tol {
                return Ok(Root {
                    x: mid,
                    f: f_mid,
                    iterations: it,
                });
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
            if hi - lo <= self.x_tol {
                let x = 0.5 * (lo + hi);
                let fx = f(x)?;
                let r = Root {
                    x,
                    f: fx,
                    iterations: it + 1,
                };
                return Ok(if fx.abs() <= best.f.abs() { r } else { best });
            }
        }
        Err(Error::Convergence {
            what,
            achieved: hi - lo,
        })
    }
}
