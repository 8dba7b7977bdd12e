//! Exact continuous t-norms on `[0, 1]`, their canonical fuzzy order, and
//! decision procedures for fuzzy lower sets, upper sets and flat ideals.

pub mod cli;
pub mod error;
pub mod format;
pub mod ideal;
pub mod mobius;
pub mod oracle;
pub mod order;
pub mod pwfn;
pub mod rat;
pub mod report;
pub mod tnorm;

pub use error::{Error, Result};
pub use pwfn::{Breakpoint, Direction, PwFn, Side, Sup};
pub use rat::{rat, Rat};
pub use report::{CheckReport, Rule, Violation, Witness};
pub use tnorm::{Frame, OrdinalSumTNorm, Residuated, Summand, SummandKind};
