//! Local hidden-variable side of the ladder: exhaustive enumeration of
//! deterministic `+-1` assignments to `A_0..A_K` and `B_0..B_K`.
//!
//! Any local hidden-variable model is a mixture of deterministic
//! assignments, and both inequalities are linear in the joint probabilities,
//! so the largest value over deterministic assignments is the bound for
//! every local model.
//!
//! An assignment is packed into a `2K + 2` bit index: bits `0..=K` hold
//! `A_0..A_K`, bits `K+1..=2K+1` hold `B_0..B_K`, and a set bit means `-1`.
//! Index 0 is therefore the all-`+1` assignment. All arithmetic here is
//! exact integer arithmetic.

use rayon::prelude::*;

use crate::error::{check_rungs_max, Error, Result, MAX_ENUMERATION_RUNGS};
use crate::quantum::Outcome;

/// One deterministic value assignment to all `2K + 2` observables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhvAssignment {
    pub a_values: Vec<Outcome>,
    pub b_values: Vec<Outcome>,
}

impl LhvAssignment {
    pub fn new(a_values: Vec<Outcome>, b_values: Vec<Outcome>) -> Result<Self> {
        if a_values.len() < 2 || a_values.len() != b_values.len() {
            return Err(Error::ChainShape {
                k: a_values.len().saturating_sub(1),
                got: b_values.len(),
            });
        }
        Ok(Self { a_values, b_values })
    }

    pub fn uniform(k: usize, value: Outcome) -> Self {
        Self {
            a_values: vec![value; k + 1],
            b_values: vec![value; k + 1],
        }
    }

    pub fn from_index(k: usize, index: u64) -> Self {
        let bit = |i: usize| {
            if index >> i & 1 == 1 {
                Outcome::Minus
            } else {
                Outcome::Plus
            }
        };
        Self {
            a_values: (0..=k).map(bit).collect(),
            b_values: (0..=k).map(|i| bit(k + 1 + i)).collect(),
        }
    }

    pub fn index(&self) -> u64 {
        let k = self.k();
        let set = |o: &Outcome| u64::from(*o == Outcome::Minus);
        let a = self.a_values.iter().enumerate().map(|(i, o)| set(o) << i);
        let b = self
            .b_values
            .iter()
            .enumerate()
            .map(|(i, o)| set(o) << (k + 1 + i));
        a.chain(b).fold(0, |acc, v| acc | v)
    }

    pub fn k(&self) -> usize {
        self.a_values.len() - 1
    }

    fn agree(&self, i: usize, j: usize) -> bool {
        self.a_values[i] == self.b_values[j]
    }
}

/// Best value of an inequality over all deterministic assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhvBound {
    pub max_s: i32,
    /// Maximizer with the smallest packed index.
    pub argmax: LhvAssignment,
    pub assignments_checked: u64,
}

/// `[a_K b_K = +1] - [a_0 b_0 = +1] - sum_k ([a_k b_{k-1} = -1] + [a_{k-1} b_k = -1])`.
pub fn lhv_s_value(assignment: &LhvAssignment) -> i32 {
    let k = assignment.k();
    let ind = |b: bool| i32::from(b);
    let mut s = ind(assignment.agree(k, k)) - ind(assignment.agree(0, 0));
    for i in 1..=k {
        s -= ind(!assignment.agree(i, i - 1));
        s -= ind(!assignment.agree(i - 1, i));
    }
    s
}

/// `[a_K = +1, b_K = +1] - [a_0 = +1, b_0 = +1]
///  - sum_k ([a_k = +1, b_{k-1} = -1] + [a_{k-1} = -1, b_k = +1])`.
pub fn boschi_value(assignment: &LhvAssignment) -> i32 {
    use Outcome::{Minus, Plus};
    let k = assignment.k();
    let (a, b) = (&assignment.a_values, &assignment.b_values);
    let ind = |cond: bool| i32::from(cond);
    let mut s = ind(a[k] == Plus && b[k] == Plus) - ind(a[0] == Plus && b[0] == Plus);
    for i in 1..=k {
        s -= ind(a[i] == Plus && b[i - 1] == Minus);
        s -= ind(a[i - 1] == Minus && b[i] == Plus);
    }
    s
}

struct Packed {
    k: usize,
    side_mask: u64,
    upper: u64,
    lower: u64,
}

impl Packed {
    fn new(k: usize) -> Self {
        let side_mask = (1u64 << (k + 1)) - 1;
        Self {
            k,
            side_mask,
            upper: side_mask & !1,
            lower: (1u64 << k) - 1,
        }
    }

    fn split(&self, index: u64) -> (u64, u64) {
        (index & self.side_mask, index >> (self.k + 1))
    }

    fn chsh(&self, index: u64) -> i32 {
        let (a, b) = self.split(index);
        let diff = a ^ b;
        let top = i32::from(diff >> self.k & 1 == 0);
        let bottom = i32::from(diff & 1 == 0);
        let down = ((a ^ (b << 1)) & self.upper).count_ones() as i32;
        let up = ((a ^ (b >> 1)) & self.lower).count_ones() as i32;
        top - bottom - down - up
    }

    fn boschi(&self, index: u64) -> i32 {
        let (a, b) = self.split(index);
        let either = a | b;
        let top = i32::from(either >> self.k & 1 == 0);
        let bottom = i32::from(either & 1 == 0);
        let down = (!a & (b << 1) & self.upper).count_ones() as i32;
        let up = (a & !(b >> 1) & self.lower).count_ones() as i32;
        top - bottom - down - up
    }
}

fn assignment_count(k: usize) -> u64 {
    1u64 << (2 * k + 2)
}

/// Parallel max over all packed indices; ties go to the smaller index.
fn max_over_assignments(k: usize, eval: impl Fn(u64) -> i32 + Sync) -> LhvBound {
    let total = assignment_count(k);
    let (max_s, index) = (0..total).into_par_iter().map(|i| (eval(i), i)).reduce(
        || (i32::MIN, u64::MAX),
        |x, y| {
            if x.0 > y.0 || (x.0 == y.0 && x.1 < y.1) {
                x
            } else {
                y
            }
        },
    );
    LhvBound {
        max_s,
        argmax: LhvAssignment::from_index(k, index),
        assignments_checked: total,
    }
}

/// Local bound of the chained CHSH-type inequality. The inequality holds
/// when `max_s <= 0`.
pub fn enumerate_bound(k: usize) -> Result<LhvBound> {
    check_rungs_max(k, MAX_ENUMERATION_RUNGS)?;
    let packed = Packed::new(k);
    Ok(max_over_assignments(k, |i| packed.chsh(i)))
}

/// Local bound of the outcome-specific inequality
/// `P(A_K+, B_K+) <= P(A_0+, B_0+) + sum_k [P(A_k+, B_{k-1}-) + P(A_{k-1}-, B_k+)]`.
pub fn enumerate_boschi_bound(k: usize) -> Result<LhvBound> {
    check_rungs_max(k, MAX_ENUMERATION_RUNGS)?;
    let packed = Packed::new(k);
    Ok(max_over_assignments(k, |i| packed.boschi(i)))
}

/// Required value of the product `A_a * B_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConstraint {
    pub a: usize,
    pub b: usize,
    pub product: Outcome,
}

/// The `2K + 2` perfect-correlation relations a local model would need in
/// the ideal limit: `A_0 B_0 = -1`, `A_k B_{k-1} = A_{k-1} B_k = +1` and
/// `A_K B_K = +1`.
pub fn ladder_constraints(k: usize) -> Vec<ParityConstraint> {
    let c = |a, b, product| ParityConstraint { a, b, product };
    let mut out = vec![c(0, 0, Outcome::Minus)];
    for i in 1..=k {
        out.push(c(i, i - 1, Outcome::Plus));
        out.push(c(i - 1, i, Outcome::Plus));
    }
    out.push(c(k, k, Outcome::Plus));
    out
}

/// Product of the right-hand sides.
pub fn required_product(constraints: &[ParityConstraint]) -> i8 {
    constraints.iter().map(|c| c.product.value()).product()
}

/// Product of the left-hand sides if it is fixed regardless of the values,
/// i.e. `+1` when every variable occurs an even number of times.
pub fn forced_product(k: usize, constraints: &[ParityConstraint]) -> Option<i8> {
    let mut a = vec![0usize; k + 1];
    let mut b = vec![0usize; k + 1];
    for c in constraints {
        a[c.a] += 1;
        b[c.b] += 1;
    }
    a.iter().chain(&b).all(|n| n % 2 == 0).then_some(1)
}

/// Number of assignments meeting every constraint.
pub fn count_satisfying(k: usize, constraints: &[ParityConstraint]) -> Result<u64> {
    check_rungs_max(k, MAX_ENUMERATION_RUNGS)?;
    let packed = Packed::new(k);
    let count = (0..assignment_count(k))
        .into_par_iter()
        .filter(|&i| {
            let (a, b) = packed.split(i);
            constraints.iter().all(|c| {
                let differ = (a >> c.a ^ b >> c.b) & 1 == 1;
                differ == (c.product == Outcome::Minus)
            })
        })
        .count();
    Ok(count as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContradictionRecord {
    pub k: usize,
    /// Product of the left-hand sides forced by each variable appearing twice.
    pub lhs_product: i8,
    /// Product of the required right-hand sides.
    pub rhs_product: i8,
    /// Present when `K` is small enough to enumerate.
    pub satisfying_assignments: Option<u64>,
    pub assignments_checked: Option<u64>,
}

/// Shows that no local assignment meets all `2K + 2` ideal-limit relations.
///
/// The parity branch runs for any `K >= 1`; enumeration only up to
/// `K = 12`.
pub fn direct_contradiction(k: usize) -> Result<ContradictionRecord> {
    if k == 0 {
        return Err(Error::RungsOutOfRange { k, max: usize::MAX });
    }
    let constraints = ladder_constraints(k);
    let rhs_product = required_product(&constraints);
    // Every A_k and B_k appears exactly twice.
    let lhs_product = forced_product(k, &constraints).unwrap_or(0);
    let (satisfying_assignments, assignments_checked) = if k <= MAX_ENUMERATION_RUNGS {
        (
            Some(count_satisfying(k, &constraints)?),
            Some(assignment_count(k)),
        )
    } else {
        (None, None)
    };
    Ok(ContradictionRecord {
        k,
        lhs_product,
        rhs_product,
        satisfying_assignments,
        assignments_checked,
    })
}
