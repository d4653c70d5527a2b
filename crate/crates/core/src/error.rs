//! Library error type.
//!
//! `Unspecified` is not a bug signal: it marks parameter points where the
//! closed-form solution is genuinely not determined (equality boundaries and
//! configuration corners the case analysis does not cover). It carries the
//! partial solving state so callers can still render the candidate ledger.

use thiserror::Error;

use crate::solver::UnspecifiedInfo;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-domain input (parameters, literals, profiles).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A strategy profile violates the stage rules for its game.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// An internal invariant failed; indicates a bug, not a caller error.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// A topology recipe could not reach its required edge count.
    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),

    /// Exhaustive enumeration was requested beyond the supported size.
    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),

    /// The closed-form solution is not determined at this parameter point.
    #[error("solution unspecified at this parameter point: {}", .0.reason)]
    Unspecified(Box<UnspecifiedInfo>),
}
