use thiserror::Error;

use crate::allocation::AllocationViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("agent {agent} out of range (instance has {agents} agents)")]
    AgentOutOfRange { agent: usize, agents: usize },

    #[error("item {item} out of range (instance has {items} items)")]
    ItemOutOfRange { item: usize, items: usize },

    #[error("marginal of item {item} undefined: item not in the context bundle")]
    MarginalUndefined { item: usize },

    #[error("invalid allocation: {0}")]
    InvalidAllocation(AllocationViolation),

    #[error("allocation is partial; a total allocation is required")]
    PartialAllocation,

    #[error("profile is not ternary symmetric: {0}")]
    NotTernary(String),

    #[error("profile is not identical across agents")]
    NotIdentical,

    #[error("profile is not additive")]
    NotAdditive,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("utility vector is not sorted ascending")]
    Unsorted,

    #[error("search bound exceeded: {what} needs {size} candidates, bound is {bound}")]
    BoundExceeded {
        what: String,
        size: String,
        bound: u128,
    },

    #[error("network input invalid: {0}")]
    InvalidNetwork(String),

    #[error("infeasible network: {0}")]
    InfeasibleFlow(String),

    #[error("flow invalid: {0}")]
    InvalidFlow(String),

    #[error("invalid 3-partition instance: {0}")]
    InvalidThreePartition(String),

    #[error("taxonomy implication {premise} => {conclusion} violated by checker outputs")]
    TaxonomyViolation { premise: String, conclusion: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Whether the error reports an exceeded enumeration guard.
    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
