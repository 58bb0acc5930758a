//! Engine-wide error type.
//!
//! Errors split into four client-visible classes: usage errors (bad input),
//! resource errors (a Gröbner run tripped a guard and carries its partial
//! statistics), unsupported-input refusals, and internal invariant breaches
//! (always a bug, never a data condition).

use thiserror::Error;

/// Statistics of a (possibly aborted) Gröbner basis run.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub reductions_to_zero: u64,
    pub basis_size: usize,
    pub max_degree_seen: u32,
    pub wall_ms: u64,
}

#[derive(Error, Debug)]
pub enum EngineError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NonPrimeModulus(u64),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("monomial order mismatch")]
    OrderMismatch,

    #[error("ideal is zero")]
    ZeroIdeal,

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error(
        "resource guard exceeded ({reason}); pairs={} reductions_to_zero={} basis={} max_degree={}",
        stats.pairs_processed, stats.reductions_to_zero, stats.basis_size, stats.max_degree_seen
    )]
    Resource { reason: String, stats: GbStats },

    #[error("internal invariant breached: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl EngineError {
    pub fn parse(msg: impl Into<String>) -> Self {
        EngineError::Parse(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        EngineError::Unsupported(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        EngineError::Invariant(msg.into())
    }
    pub fn degenerate(msg: impl Into<String>) -> Self {
        EngineError::Degenerate(msg.into())
    }

    /// True when the error is a resource-guard trip rather than a hard failure.
    pub fn is_resource(&self) -> bool {
        matches!(self, EngineError::Resource { .. })
    }
}
