//! The chain of measurement settings behind the ladder argument, and the
//! probability `P_K` of the event that local realism forbids.
//!
//! The ladder uses `K + 1` observables per particle, `A_0..A_K` and
//! `B_0..B_K`. Quantum mechanics must give zero probability to the `2K + 1`
//! events
//!
//! * `A_0 = +1, B_0 = +1`,
//! * `A_k = +1, B_{k-1} = -1` for `k = 1..K`,
//! * `A_{k-1} = -1, B_k = +1` for `k = 1..K`,
//!
//! while `P_K = P(A_K = +1, B_K = +1)` stays nonzero. For the state with
//! amplitude ratio `x` these conditions are equivalent to the tangent
//! relations `tan a_k / tan b_{k-1} = -x`, `tan b_k / tan a_{k-1} = -x` and
//! `tan a_0 tan b_0 = x`. One angle is free; here it is `a_K`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{check_rungs, Error, Result};
use crate::quantum::{joint_probability, LadderState, Outcome, Setting};

/// Relative tolerance for the tangent relations of a settings chain.
pub const CHAIN_TOLERANCE: f64 = 1e-10;

/// Settings `a_0..a_K` for particle A and `b_0..b_K` for particle B.
#[derive(Debug, Clone, PartialEq)]
pub struct SettingsChain {
    alpha: Vec<Setting>,
    beta: Vec<Setting>,
}

impl SettingsChain {
    pub fn new(alpha: Vec<Setting>, beta: Vec<Setting>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::RungsOutOfRange {
                k: alpha.len().saturating_sub(1),
                max: crate::error::MAX_RUNGS,
            });
        }
        if alpha.len() != beta.len() {
            return Err(Error::ChainShape {
                k: alpha.len() - 1,
                got: beta.len(),
            });
        }
        Ok(Self { alpha, beta })
    }

    /// Number of rungs `K`.
    pub fn k(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha(&self, k: usize) -> Setting {
        self.alpha[k]
    }

    pub fn beta(&self, k: usize) -> Setting {
        self.beta[k]
    }

    pub fn alpha_settings(&self) -> &[Setting] {
        &self.alpha
    }

    pub fn beta_settings(&self) -> &[Setting] {
        &self.beta
    }

    /// Largest relative residual over the `2K + 1` tangent relations.
    pub fn constraint_residual(&self, x: f64) -> f64 {
        let rel = |value: f64, target: f64| ((value - target) / target).abs();
        let mut worst = rel(self.alpha[0].tan() * self.beta[0].tan(), x);
        for k in 1..=self.k() {
            worst = worst
                .max(rel(self.alpha[k].tan() / self.beta[k - 1].tan(), -x))
                .max(rel(self.beta[k].tan() / self.alpha[k - 1].tan(), -x));
        }
        worst
    }

    /// Relative residual of `tan a_K tan b_K = x^(2K+1)`.
    pub fn closure_residual(&self, x: f64) -> f64 {
        let k = self.k();
        let target = x.powi(2 * k as i32 + 1);
        ((self.alpha[k].tan() * self.beta[k].tan() - target) / target).abs()
    }
}

/// Outcome of checking a chain against the Born rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderCertificate {
    /// `P(A_K = +1, B_K = +1)`.
    pub p_k: f64,
    /// Largest of the `2K + 1` probabilities that must vanish.
    pub max_zero_violation: f64,
}

impl LadderCertificate {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_zero_violation <= tol && self.p_k > tol
    }
}

fn is_axis_aligned(setting: Setting) -> bool {
    let q = setting.radians() / FRAC_PI_2;
    q == q.round()
}

/// Completes the chain from the free setting `a_K`.
///
/// `b_K` follows from `tan b_K = x^(2K+1) cot a_K`. Two interleaved descents
/// then fill in the rest, one from `a_K` (`b_{K-1}`, `a_{K-2}`, ...) and one
/// from `b_K` (`a_{K-1}`, `b_{K-2}`, ...), each step being
/// `tan(next) = -tan(current) / x`. The relation `tan a_0 tan b_0 = x` is not
/// used to build the chain and is checked at the end.
pub fn solve_chain(state: &LadderState, k: usize, alpha_k: Setting) -> Result<SettingsChain> {
    check_rungs(k)?;
    if is_axis_aligned(alpha_k) {
        return Err(Error::DegenerateSetting(alpha_k.radians()));
    }
    let x = state.ratio();
    let tan_ak = alpha_k.tan();
    let tan_bk = x.powi(2 * k as i32 + 1) / tan_ak;

    let mut alpha = vec![Setting::from_tan(0.0); k + 1];
    let mut beta = alpha.clone();
    alpha[k] = alpha_k;
    beta[k] = Setting::from_tan(tan_bk);

    // Chain one starts on A, chain two on B; each alternates sides downward.
    let mut from_a = tan_ak;
    let mut from_b = tan_bk;
    for step in 1..=k {
        from_a = -from_a / x;
        from_b = -from_b / x;
        let idx = k - step;
        if step % 2 == 1 {
            beta[idx] = Setting::from_tan(from_a);
            alpha[idx] = Setting::from_tan(from_b);
        } else {
            alpha[idx] = Setting::from_tan(from_a);
            beta[idx] = Setting::from_tan(from_b);
        }
    }

    let residual = ((alpha[0].tan() * beta[0].tan() - x) / x).abs();
    if residual.is_nan() || residual > CHAIN_TOLERANCE {
        return Err(Error::Inconsistent { residual });
    }
    SettingsChain::new(alpha, beta)
}

/// Equal settings on both sides, `tan a_k = tan b_k = (-1)^k x^(k + 1/2)`.
pub fn canonical_chain(state: &LadderState, k: usize) -> Result<SettingsChain> {
    check_rungs(k)?;
    let x = state.ratio();
    let root = x.sqrt();
    let settings: Vec<Setting> = (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            Setting::from_tan(sign * x.powi(i as i32) * root)
        })
        .collect();
    SettingsChain::new(settings.clone(), settings)
}

/// The `2K + 1` probabilities that must vanish, in the order
/// `(A_0+, B_0+)`, then `(A_k+, B_{k-1}-)` and `(A_{k-1}-, B_k+)` for each `k`.
pub fn zero_conditions(state: &LadderState, chain: &SettingsChain) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * chain.k() + 1);
    out.push(joint_probability(
        state,
        chain.alpha(0),
        chain.beta(0),
        Outcome::Plus,
        Outcome::Plus,
    ));
    for k in 1..=chain.k() {
        out.push(joint_probability(
            state,
            chain.alpha(k),
            chain.beta(k - 1),
            Outcome::Plus,
            Outcome::Minus,
        ));
        out.push(joint_probability(
            state,
            chain.alpha(k - 1),
            chain.beta(k),
            Outcome::Minus,
            Outcome::Plus,
        ));
    }
    out
}

pub fn verify_ladder(state: &LadderState, chain: &SettingsChain) -> LadderCertificate {
    let k = chain.k();
    let p_k = joint_probability(
        state,
        chain.alpha(k),
        chain.beta(k),
        Outcome::Plus,
        Outcome::Plus,
    );
    let max_zero_violation = zero_conditions(state, chain)
        .into_iter()
        .fold(0.0, f64::max);
    LadderCertificate {
        p_k,
        max_zero_violation,
    }
}

/// Closed-form `P_K` for an arbitrary free setting `a_K`, with the rest of
/// the chain fixed by the zero conditions:
///
/// `P_K = alpha^2 (1 - x^(2K))^2 cos^2 a_K / (1 + x^(4K+2) cot^2 a_K)`.
///
/// Evaluated with numerator and denominator scaled by `beta^(4K+2) sin^2 a_K`
/// so that no power of `x` can overflow. Returns exactly zero when `a_K` is a
/// multiple of `pi/2`.
pub fn pk_general(state: &LadderState, k: usize, alpha_k: Setting) -> Result<f64> {
    check_rungs(k)?;
    if is_axis_aligned(alpha_k) {
        return Ok(0.0);
    }
    let (a, b) = (state.alpha(), state.beta());
    let n = 2 * k as i32;
    let (s, c) = alpha_k.radians().sin_cos();
    let (s2, c2) = (s * s, c * c);
    let gap = b.powi(n) - a.powi(n);
    let num = a * a * b * b * gap * gap * c2 * s2;
    let den = b.powi(2 * n + 2) * s2 + a.powi(2 * n + 2) * c2;
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok(num / den)
}

pub(crate) fn hardy_fraction(a: f64, b: f64, k: usize) -> f64 {
    let n = 2 * k as i32 + 1;
    let (an, bn) = (a.powi(n), b.powi(n));
    let r = (a * bn - b * an) / (bn + an);
    r * r
}

/// Optimized `P_K` as a function of the ratio `x` alone,
/// `((alpha beta^(2K+1) - beta alpha^(2K+1)) / (beta^(2K+1) + alpha^(2K+1)))^2`.
pub fn pk_hardy(x: f64, k: usize) -> Result<f64> {
    check_rungs(k)?;
    let state = LadderState::from_ratio(x)?;
    Ok(hardy_fraction(state.alpha(), state.beta(), k))
}

/// Free setting that maximizes `P_K`: `tan^2 a_K = x^(2K+1)`, positive root.
pub fn optimal_alpha_k(state: &LadderState, k: usize) -> Result<Setting> {
    check_rungs(k)?;
    let x = state.ratio();
    Ok(Setting::from_tan(x.powf(k as f64 + 0.5)))
}
