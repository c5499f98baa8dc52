use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge ({left}, {right})")]
    DuplicateEdge { left: usize, right: usize },

    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: Vertex },

    #[error("no edge between left {left} and right {right}")]
    NoSuchEdge { left: usize, right: usize },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("weight {0} cannot be negated")]
    UnnegatableWeight(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("not an alternating path or cycle: {0}")]
    NotAlternating(String),

    #[error("potential is not a certificate: arc {tail} -> {head} has reduced weight {reduced}")]
    CertificateViolation {
        tail: String,
        head: String,
        reduced: String,
    },

    #[error("directed cycle through {0}")]
    CycleDetected(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid event: {0}")]
    InvalidEvent(String),

    #[error("instance size {got} exceeds the cap of {cap}")]
    SizeCap { cap: usize, got: usize },

    #[error("valuations are not additive")]
    NotAdditive,

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// True for failures that indicate corrupted internal state rather than
    /// bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(
            self,
            Error::InvariantBreach(_) | Error::CertificateViolation { .. }
        )
    }
}
