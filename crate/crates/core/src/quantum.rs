//! Born-rule probabilities for the two-particle state
//! `|psi> = alpha |+>|+> - beta |->|->` measured along rotated real bases.
//!
//! Everything here is computed from the explicit four-component state vector
//! rather than from closed forms, so the other modules can use it as an
//! independent reference.
//!
//! The product basis is ordered `(++, +-, -+, --)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerance on `alpha^2 + beta^2 = 1` when building a state from amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-14;

/// Default threshold for treating a probability as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Two-particle entangled state with real positive amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderState {
    alpha: f64,
    beta: f64,
}

impl LadderState {
    /// Builds a state from its amplitudes. Product states are rejected.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = alpha.is_finite()
            && beta.is_finite()
            && alpha > 0.0
            && beta > 0.0
            && (alpha * alpha + beta * beta - 1.0).abs() <= NORM_TOLERANCE;
        if ok {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::InvalidAmplitudes { alpha, beta })
        }
    }

    /// Builds the normalized state with amplitude ratio `x = alpha / beta`.
    pub fn from_ratio(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidRatio(x));
        }
        let norm = x.hypot(1.0);
        Ok(Self {
            alpha: x / norm,
            beta: 1.0 / norm,
        })
    }

    /// The maximally entangled state, `alpha = beta = 1/sqrt(2)`.
    pub fn maximally_entangled() -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: a, beta: a }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `x = alpha / beta`.
    pub fn ratio(&self) -> f64 {
        self.alpha / self.beta
    }

    /// Amplitudes in `(++, +-, -+, --)` order.
    pub fn amplitudes(&self) -> [f64; 4] {
        [self.alpha, 0.0, 0.0, -self.beta]
    }
}

/// A measurement direction, stored on the principal branch `[-pi/2, pi/2]`.
///
/// Angles differing by `pi` flip the sign of both eigenvectors and so define
/// the same observable. The tangent is kept alongside the angle: settings
/// built with [`Setting::from_tan`] report that tangent exactly, since
/// `tan(atan(t))` loses about `eps * |t|` relative precision for large `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setting {
    angle: f64,
    tan: f64,
}

impl Setting {
    pub fn new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFiniteAngle(angle));
        }
        let angle = angle - PI * (angle / PI).round();
        Ok(Self {
            angle,
            tan: angle.tan(),
        })
    }

    /// Principal-branch setting whose tangent is `t`.
    pub fn from_tan(t: f64) -> Self {
        Self {
            angle: t.atan(),
            tan: t,
        }
    }

    pub fn radians(&self) -> f64 {
        self.angle
    }

    pub fn tan(&self) -> f64 {
        self.tan
    }

    /// Eigenvector for the given outcome in the `(|+>, |->)` basis.
    pub fn eigenvector(&self, outcome: Outcome) -> [f64; 2] {
        let (s, c) = self.angle.sin_cos();
        match outcome {
            Outcome::Plus => [c, s],
            Outcome::Minus => [-s, c],
        }
    }
}

/// Result of a two-valued measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

/// Joint outcome distribution for one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointTable {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
}

impl JointTable {
    pub fn get(&self, oa: Outcome, ob: Outcome) -> f64 {
        match (oa, ob) {
            (Outcome::Plus, Outcome::Plus) => self.p_pp,
            (Outcome::Plus, Outcome::Minus) => self.p_pm,
            (Outcome::Minus, Outcome::Plus) => self.p_mp,
            (Outcome::Minus, Outcome::Minus) => self.p_mm,
        }
    }

    pub fn total(&self) -> f64 {
        self.p_pp + self.p_pm + self.p_mp + self.p_mm
    }

    /// Probability that the two outcomes agree.
    pub fn agree(&self) -> f64 {
        self.p_pp + self.p_mm
    }

    /// Probability that the two outcomes differ.
    pub fn disagree(&self) -> f64 {
        self.p_pm + self.p_mp
    }

    pub fn marginal_a(&self, oa: Outcome) -> f64 {
        self.get(oa, Outcome::Plus) + self.get(oa, Outcome::Minus)
    }

    pub fn marginal_b(&self, ob: Outcome) -> f64 {
        self.get(Outcome::Plus, ob) + self.get(Outcome::Minus, ob)
    }
}

/// `|<a(oa) (x) b(ob) | psi>|^2`, projecting the four-component state vector
/// onto the tensor product of the two eigenvectors.
pub fn joint_probability(
    state: &LadderState,
    a: Setting,
    b: Setting,
    oa: Outcome,
    ob: Outcome,
) -> f64 {
    let ea = a.eigenvector(oa);
    let eb = b.eigenvector(ob);
    let psi = state.amplitudes();
    let mut amp = 0.0;
    for (i, ai) in ea.iter().enumerate() {
        for (j, bj) in eb.iter().enumerate() {
            amp += ai * bj * psi[2 * i + j];
        }
    }
    (amp * amp).min(1.0)
}

pub fn joint_table(state: &LadderState, a: Setting, b: Setting) -> JointTable {
    let p = |oa, ob| joint_probability(state, a, b, oa, ob);
    JointTable {
        p_pp: p(Outcome::Plus, Outcome::Plus),
        p_pm: p(Outcome::Plus, Outcome::Minus),
        p_mp: p(Outcome::Minus, Outcome::Plus),
        p_mm: p(Outcome::Minus, Outcome::Minus),
    }
}
