//! Numerical companion to the two-particle ladder proof of nonlocality.
//!
//! * [`quantum`]: Born-rule probabilities from the explicit state vector.
//! * [`ladder`]: the settings chain, its certificate and closed forms for `P_K`.
//! * [`optimizer`]: the polynomial `m_K`, its roots and a direct maximizer.
//! * [`bell`]: CHSH-type quantities and `S_K = 2 P_K`.
//! * [`lhv`]: exhaustive local hidden-variable bounds and the parity argument.
//! * [`cli`]: the `ladder` command-line tool.

pub mod bell;
pub mod cli;
pub mod error;
pub mod ladder;
pub mod lhv;
pub mod optimizer;
pub mod quantum;

pub use error::{Error, ErrorKind, Result};
pub use quantum::{joint_probability, joint_table, JointTable, LadderState, Outcome, Setting};
