use thiserror::Error;

/// Largest number of ladder rungs accepted by the closed-form routines.
pub const MAX_RUNGS: usize = 64;

/// Largest number of rungs for exhaustive hidden-variable enumeration.
pub const MAX_ENUMERATION_RUNGS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude ratio must be positive and finite, got {0}")]
    InvalidRatio(f64),

    #[error(
        "amplitudes must be positive with alpha^2 + beta^2 = 1, got alpha={alpha}, beta={beta}"
    )]
    InvalidAmplitudes { alpha: f64, beta: f64 },

    #[error("setting angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("free setting {0} rad is a multiple of pi/2; the constraint chain is undefined there")]
    DegenerateSetting(f64),

    #[error("chain length {got} does not match K={k}")]
    ChainShape { k: usize, got: usize },

    #[error("number of rungs K={k} outside supported range 1..={max}")]
    RungsOutOfRange { k: usize, max: usize },

    #[error("setting index {index} outside 0..={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("invalid scan range [{lo}, {hi}] with {steps} steps")]
    InvalidScan { lo: f64, hi: f64, steps: usize },

    #[error("non-finite value evaluating {what} (x={x}, K={k})")]
    Overflow {
        what: &'static str,
        x: f64,
        k: usize,
    },

    #[error("root search for K={k} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        k: usize,
        iterations: usize,
        residual: f64,
    },

    #[error(
        "closing constraint violated: tan(a0)*tan(b0) residual {residual:e} exceeds tolerance"
    )]
    Inconsistent { residual: f64 },
}

/// Coarse classification used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Range,
    Convergence,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidRatio(_)
            | Error::InvalidAmplitudes { .. }
            | Error::NonFiniteAngle(_)
            | Error::DegenerateSetting(_)
            | Error::ChainShape { .. }
            | Error::InvalidScan { .. } => ErrorKind::Domain,
            Error::RungsOutOfRange { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Overflow { .. } => ErrorKind::Range,
            Error::NoConvergence { .. } | Error::Inconsistent { .. } => ErrorKind::Convergence,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rungs(k: usize) -> Result<()> {
    check_rungs_max(k, MAX_RUNGS)
}

pub(crate) fn check_rungs_max(k: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&k) {
        Ok(())
    } else {
        Err(Error::RungsOutOfRange { k, max })
    }
}
