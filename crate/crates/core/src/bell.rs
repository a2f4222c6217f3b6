//! CHSH-type quantities for the ladder experiment under equal settings
//! `tan a_k = tan b_k = (-1)^k x^(k + 1/2)`.
//!
//! `P+(A_k, B_k')` is the probability that the two outcomes agree and
//! `P-(A_k, B_k')` that they differ. The chained inequality
//!
//! `S_K = P+(A_K, B_K) - P+(A_0, B_0) - 2 sum_k P-(A_k, B_{k-1}) <= 0`
//!
//! holds for every local model; quantum mechanics reaches `S_K = 2 P_K`.
//! The single-sum form relies on `P(A_k, B_k') = P(A_k', B_k)`, which holds
//! for these settings.

use crate::error::{check_rungs, Error, Result};
use crate::ladder::{canonical_chain, verify_ladder, zero_conditions};
use crate::quantum::LadderState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellReport {
    pub k_max: usize,
    pub p_plus_00: f64,
    pub p_plus_kk: f64,
    /// `sum_{k=1..K} P-(A_k, B_{k-1})`.
    pub cross_sum: f64,
    pub s_value: f64,
    /// `P(A_K = +1, B_K = +1)` from the Born rule.
    pub boschi_lhs: f64,
    /// Sum of the `2K + 1` outcome-specific probabilities bounding `boschi_lhs`
    /// in the local-realistic inequality; zero in the ideal case.
    pub boschi_rhs: f64,
}

/// Finite-`K` values of the terms whose large-`K`, `x -> 1` behaviour is of
/// interest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitProfile {
    pub p_plus_00: f64,
    pub p_plus_kk: f64,
    /// `max_k P-(A_k, B_{k-1})`.
    pub max_cross: f64,
}

fn check_indices(k_max: usize, k: usize, kp: usize) -> Result<()> {
    check_rungs(k_max)?;
    for index in [k, kp] {
        if index > k_max {
            return Err(Error::IndexOutOfRange { index, k: k_max });
        }
    }
    Ok(())
}

fn finite(value: f64, what: &'static str, x: f64, k: usize) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what, x, k })
    }
}

/// Common denominator and signed cross term of the closed forms.
fn parts(x: f64, k: usize, kp: usize) -> (f64, f64) {
    let den = (1.0 + x.powi(2 * k as i32 + 1)) * (1.0 + x.powi(2 * kp as i32 + 1));
    let sign = if (k + kp).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let cross = 4.0 * (x / (1.0 + x * x)) * sign * x.powi((k + kp + 1) as i32);
    (den, cross)
}

/// `P+(A_k, B_k')` at equal settings on a ladder of `k_max` rungs:
///
/// `[1 + x^(2(k+k'+1)) - 4 (x / (1+x^2)) (-1)^(k+k') x^(k+k'+1)] / [(1 + x^(2k+1)) (1 + x^(2k'+1))]`.
pub fn p_plus(state: &LadderState, k_max: usize, k: usize, kp: usize) -> Result<f64> {
    check_indices(k_max, k, kp)?;
    let x = state.ratio();
    let (den, cross) = parts(x, k, kp);
    let num = 1.0 + x.powi(2 * (k + kp + 1) as i32) - cross;
    finite(num / den, "P+", x, k_max)
}

/// `P-(A_k, B_k')` at equal settings on a ladder of `k_max` rungs:
///
/// `[x^(2k+1) + x^(2k'+1) + 4 (x / (1+x^2)) (-1)^(k+k') x^(k+k'+1)] / [(1 + x^(2k+1)) (1 + x^(2k'+1))]`.
pub fn p_minus(state: &LadderState, k_max: usize, k: usize, kp: usize) -> Result<f64> {
    check_indices(k_max, k, kp)?;
    let x = state.ratio();
    let (den, cross) = parts(x, k, kp);
    let num = x.powi(2 * k as i32 + 1) + x.powi(2 * kp as i32 + 1) + cross;
    finite(num / den, "P-", x, k_max)
}

/// Assembles `S_K` and the two sides of the outcome-specific inequality.
pub fn s_k(state: &LadderState, k: usize) -> Result<BellReport> {
    check_rungs(k)?;
    let p_plus_00 = p_plus(state, k, 0, 0)?;
    let p_plus_kk = p_plus(state, k, k, k)?;
    let cross_sum = (1..=k)
        .map(|i| p_minus(state, k, i, i - 1))
        .sum::<Result<f64>>()?;
    let s_value = p_plus_kk - p_plus_00 - 2.0 * cross_sum;

    let chain = canonical_chain(state, k)?;
    let boschi_lhs = verify_ladder(state, &chain).p_k;
    let boschi_rhs = zero_conditions(state, &chain).iter().sum();

    Ok(BellReport {
        k_max: k,
        p_plus_00,
        p_plus_kk,
        cross_sum,
        s_value,
        boschi_lhs,
        boschi_rhs,
    })
}

/// `P-(A_0,B_0) + P+(A_0,B_1) + P+(A_1,B_0) + P+(A_1,B_1)` at the `K = 1`
/// equal settings. Local models keep this at or below 3.
pub fn chsh_k1_sum(state: &LadderState) -> Result<f64> {
    Ok(p_minus(state, 1, 0, 0)?
        + p_plus(state, 1, 0, 1)?
        + p_plus(state, 1, 1, 0)?
        + p_plus(state, 1, 1, 1)?)
}

pub fn limit_profile(k: usize, x: f64) -> Result<LimitProfile> {
    check_rungs(k)?;
    let state = LadderState::from_ratio(x)?;
    let mut max_cross = 0.0_f64;
    for i in 1..=k {
        max_cross = max_cross.max(p_minus(&state, k, i, i - 1)?);
    }
    Ok(LimitProfile {
        p_plus_00: p_plus(&state, k, 0, 0)?,
        p_plus_kk: p_plus(&state, k, k, k)?,
        max_cross,
    })
}
