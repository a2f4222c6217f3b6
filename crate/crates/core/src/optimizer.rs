//! Optimal amplitude ratios for the ladder.
//!
//! The ratios `r1 < 1 < r2 = 1/r1` that maximize the optimized `P_K` are the
//! two positive real roots of
//!
//! `m_K(x) = x^(4K+3) - (1+2K) x^(2K+3) - 2K x^(2K+2) - 2K x^(2K+1) - (1+2K) x^(2K) + 1`.
//!
//! [`find_roots`] brackets and polishes `r1` directly on the polynomial;
//! [`maximize_pk`] maximizes `P_K` over `x` without looking at `m_K`, so the
//! two can be compared.

use rayon::prelude::*;

use crate::error::{check_rungs, Error, Result};
use crate::ladder::hardy_fraction;
use crate::quantum::LadderState;

/// Residual at which Newton polishing of `r1` stops.
pub const ROOT_RESIDUAL: f64 = 1e-12;

/// Iteration budget shared by bisection and Newton steps.
pub const ROOT_MAX_ITERATIONS: usize = 200;

const BISECTION_WIDTH: f64 = 1e-6;

/// Bracket searched by [`maximize_pk`].
pub const MAXIMIZE_BRACKET: (f64, f64) = (0.01, 1.0);

/// Optimal ratios for one `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub k: usize,
    pub r1: f64,
    pub r2: f64,
    pub p_max: f64,
}

/// One point of an `m_K` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub x: f64,
    pub m_value: f64,
}

fn m_unchecked(x: f64, k: usize) -> f64 {
    let n = 2.0 * k as f64;
    let p = x.powi(2 * k as i32);
    let x2 = x * x;
    let x3 = x2 * x;
    // ascending powers: x^0, x^(2K), x^(2K+1), x^(2K+2), x^(2K+3), x^(4K+3)
    let mut acc = 1.0;
    acc -= (1.0 + n) * p;
    acc -= n * p * x;
    acc -= n * p * x2;
    acc -= (1.0 + n) * p * x3;
    acc += p * p * x3;
    acc
}

fn m_derivative_unchecked(x: f64, k: usize) -> f64 {
    let n = 2.0 * k as f64;
    let p = x.powi(2 * k as i32);
    let x2 = x * x;
    let mut acc = -(1.0 + n) * n * x.powi(2 * k as i32 - 1);
    acc -= n * (n + 1.0) * p;
    acc -= n * (n + 2.0) * p * x;
    acc -= (1.0 + n) * (n + 3.0) * p * x2;
    acc += (2.0 * n + 3.0) * p * p * x2;
    acc
}

/// Evaluates `m_K(x)`.
pub fn m_poly(x: f64, k: usize) -> Result<f64> {
    check_rungs(k)?;
    let value = m_unchecked(x, k);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            what: "m_K(x)",
            x,
            k,
        })
    }
}

/// Evaluates `m_K'(x)`.
pub fn m_poly_derivative(x: f64, k: usize) -> Result<f64> {
    check_rungs(k)?;
    let value = m_derivative_unchecked(x, k);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            what: "m_K'(x)",
            x,
            k,
        })
    }
}

/// Locates `r1` in `(0, 1)` and derives `r2 = 1/r1`.
///
/// `m_K(0) = 1` and `m_K(1) = -8K` bracket a sign change. Bisection shrinks
/// the bracket to `1e-6`, then Newton steps polish until `|m_K(r1)| < 1e-12`.
/// A Newton step that would leave the bracket is replaced by a bisection step.
pub fn find_roots(k: usize) -> Result<RootPair> {
    check_rungs(k)?;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut r = 0.5;
    let mut value = m_unchecked(r, k);
    let mut iterations = 0;

    while iterations < ROOT_MAX_ITERATIONS {
        if value.abs() < ROOT_RESIDUAL {
            let r2 = 1.0 / r;
            let p_max = {
                let s = LadderState::from_ratio(r)?;
                hardy_fraction(s.alpha(), s.beta(), k)
            };
            return Ok(RootPair {
                k,
                r1: r,
                r2,
                p_max,
            });
        }
        iterations += 1;

        // m decreases through the root: positive on the left, negative on the right.
        if value > 0.0 {
            lo = r;
        } else {
            hi = r;
        }

        let bisect = 0.5 * (lo + hi);
        r = if hi - lo > BISECTION_WIDTH {
            bisect
        } else {
            let slope = m_derivative_unchecked(r, k);
            let step = r - value / slope;
            if slope != 0.0 && step > lo && step < hi {
                step
            } else {
                bisect
            }
        };
        value = m_unchecked(r, k);
    }

    Err(Error::NoConvergence {
        k,
        iterations,
        residual: value.abs(),
    })
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// Returns `(x_max, f_max)` from the better of the two final interior points.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    max_evals: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;

    while evals < max_evals && hi - lo > x_tol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evals += 1;
    }

    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes the optimized `P_K` over `x` in `(0.01, 1)`.
pub fn maximize_pk(k: usize) -> Result<(f64, f64)> {
    check_rungs(k)?;
    let objective = |x: f64| {
        let norm = x.hypot(1.0);
        hardy_fraction(x / norm, 1.0 / norm, k)
    };
    let (lo, hi) = MAXIMIZE_BRACKET;
    Ok(golden_section_max(objective, lo, hi, 1e-12, 500))
}

/// Uniform samples of `m_K` on `[x_lo, x_hi]`, both endpoints included.
pub fn scan_m(k: usize, x_lo: f64, x_hi: f64, steps: usize) -> Result<Vec<CurveSample>> {
    check_rungs(k)?;
    if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi && steps >= 2) {
        return Err(Error::InvalidScan {
            lo: x_lo,
            hi: x_hi,
            steps,
        });
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            let x = if i == steps - 1 {
                x_hi
            } else {
                x_lo + (x_hi - x_lo) * (i as f64 / last)
            };
            m_poly(x, k).map(|m_value| CurveSample { x, m_value })
        })
        .collect()
}

/// Adjacent sample pairs whose `m` values change sign, as `(x_left, x_right)`.
///
/// A sample that is exactly zero brackets with its right neighbour.
pub fn sign_changes(samples: &[CurveSample]) -> Vec<(f64, f64)> {
    samples
        .windows(2)
        .filter(|w| {
            let (a, b) = (w[0].m_value, w[1].m_value);
            a == 0.0 || (a > 0.0) != (b > 0.0) && b != 0.0
        })
        .map(|w| (w[0].x, w[1].x))
        .collect()
}

/// Optimal ratios for every `K = 1..=k_max`, rows in order of `K`.
pub fn table1(k_max: usize) -> Result<Vec<RootPair>> {
    check_rungs(k_max)?;
    (1..=k_max).into_par_iter().map(find_roots).collect()
}
