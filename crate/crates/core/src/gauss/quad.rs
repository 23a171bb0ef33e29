//! Globally adaptive Gauss–Kronrod (7/15) quadrature of a function given by
//! its logarithm.
//!
//! Partial sums are kept relative to a running shift `exp(shift)` that tracks
//! the largest log-integrand seen so far, so integrals far below the smallest
//! positive `f64` still come back with a finite logarithm.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct LogIntegral {
    pub ln_value: f64,
    /// Estimated absolute error relative to the value (`err / value`).
    pub rel_error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

struct Integrator<F> {
    ln_f: F,
    shift: f64,
}

impl<F: Fn(f64) -> f64> Integrator<F> {
    /// Applies the 15-point rule on `[a, b]`. If a node exceeds the current
    /// shift, the shift is raised and the stored `pieces` are rescaled first.
    fn rule(&mut self, a: f64, b: f64, pieces: &mut [Piece]) -> Piece {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut logs = [0.0f64; 15];
        logs[7] = (self.ln_f)(center);
        for j in 0..7 {
            let dx = half * XGK[j];
            logs[j] = (self.ln_f)(center - dx);
            logs[14 - j] = (self.ln_f)(center + dx);
        }
        let local_max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if local_max > self.shift {
            if self.shift.is_finite() {
                let scale = (self.shift - local_max).exp();
                for p in pieces.iter_mut() {
                    p.value *= scale;
                    p.error *= scale;
                }
            }
            self.shift = local_max;
        }
        let shift = self.shift;
        let val = |l: f64| {
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                (l - shift).exp()
            }
        };

        let fc = val(logs[7]);
        let mut kronrod = WGK[7] * fc;
        let mut gauss = WG[3] * fc;
        for j in 0..7 {
            let pair = val(logs[j]) + val(logs[14 - j]);
            kronrod += WGK[j] * pair;
            if j % 2 == 1 {
                gauss += WG[j / 2] * pair;
            }
        }
        Piece {
            a,
            b,
            value: kronrod * half,
            error: ((kronrod - gauss) * half).abs(),
        }
    }
}

/// Integrates `exp(ln_f)` over consecutive intervals between `breakpoints`
/// (sorted, at least two entries). Convergence requires the total error to be
/// within `max(rel_tol * I, abs_tol * exp(shift))`, i.e. `abs_tol` is measured
/// in units of the largest integrand value seen.
pub fn integrate_log<F>(
    ln_f: F,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<LogIntegral>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(breakpoints.len() >= 2);
    let mut integ = Integrator {
        ln_f,
        shift: f64::NEG_INFINITY,
    };
    let mut pieces: Vec<Piece> = Vec::with_capacity(64);
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            let p = integ.rule(w[0], w[1], &mut pieces);
            pieces.push(p);
        }
    }
    if pieces.is_empty() {
        return Ok(LogIntegral {
            ln_value: f64::NEG_INFINITY,
            rel_error: 0.0,
            intervals: 0,
        });
    }

    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let err: f64 = pieces.iter().map(|p| p.error).sum();
        if integ.shift == f64::NEG_INFINITY || total == 0.0 && err == 0.0 {
            return Ok(LogIntegral {
                ln_value: f64::NEG_INFINITY,
                rel_error: 0.0,
                intervals: pieces.len(),
            });
        }
        let converged =
            err <= rel_tol * total || err <= abs_tol || err <= 50.0 * f64::EPSILON * total;
        if converged {
            return Ok(LogIntegral {
                ln_value: total.ln() + integ.shift,
                rel_error: err / total,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= max_intervals {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                achieved: err / total,
            });
        }
        let (idx, worst) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further; accept what we have
            return Ok(LogIntegral {
                ln_value: total.ln() + integ.shift,
                rel_error: err / total,
                intervals: pieces.len(),
            });
        }
        pieces.swap_remove(idx);
        let left = integ.rule(worst.a, mid, &mut pieces);
        pieces.push(left);
        let right = integ.rule(mid, worst.b, &mut pieces);
        pieces.push(right);
    }
}
