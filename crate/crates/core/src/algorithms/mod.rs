//! Constructive algorithms: sequential egalitarian allocation for identical
//! utilities, and the flow-based algorithm for ternary symmetric utilities.

mod egal;
mod flow;
mod nash_flow;
mod ternary;

use num_bigint::BigInt;

use crate::allocation::Allocation;

pub use egal::{egal_sequential, egal_sequential_traced};
pub use flow::{
    min_cost_integer_flow, min_cost_integer_flow_traced, FlowEdge, FlowNetwork, IntegerFlow,
};
pub use nash_flow::{build_nash_flow_network, NashFlowNetwork};
pub use ternary::{ternary_flow, ternary_flow_traced};

/// Progress reported by the `*_traced` variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// `item` went to `agent`; `partial` is the allocation so far.
    Assign {
        item: usize,
        agent: usize,
        partial: Allocation,
    },
    /// One unit-or-more augmentation along `path` (node indices of the
    /// network, without the internal super source and sink).
    Augment {
        path: Vec<usize>,
        amount: u64,
        cost: BigInt,
    },
}

pub(crate) type Tracer<'a> = Option<&'a mut dyn FnMut(TraceEvent)>;

pub(crate) fn emit(tracer: &mut Tracer<'_>, event: impl FnOnce() -> TraceEvent) {
    if let Some(t) = tracer {
        t(event());
    }
}
