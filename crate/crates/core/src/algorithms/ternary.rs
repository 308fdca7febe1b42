//! Leximin-optimal allocation for ternary symmetric utilities.
//!
//! Items someone likes go through the Nash flow network restricted to the
//! agents who like them. Items everyone dislikes then go one by one to the
//! best-off agent, and the remaining items to the worst-off agent among
//! those indifferent to them. Utilities are tracked after normalization.

use super::flow::solve;
use super::nash_flow::build_nash_flow_network;
use super::{emit, TraceEvent, Tracer};
use crate::allocation::Allocation;
use crate::error::Result;
use crate::instance::Instance;

pub fn ternary_flow(instance: &Instance) -> Result<Allocation> {
    run(instance, None)
}

/// As [`ternary_flow`], reporting flow augmentations and every assignment.
pub fn ternary_flow_traced(
    instance: &Instance,
    mut on_event: impl FnMut(TraceEvent),
) -> Result<Allocation> {
    run(instance, Some(&mut on_event))
}

fn run(instance: &Instance, mut tracer: Tracer<'_>) -> Result<Allocation> {
    let view = instance.ternary_view()?;
    let signs = &view.signs;
    let n = instance.agents();
    let top = |o: usize| {
        signs
            .iter()
            .map(|row| row[o])
            .max()
            .expect("at least one agent")
    };
    let liked: Vec<usize> = (0..instance.items()).filter(|&o| top(o) == 1).collect();
    let neutral: Vec<usize> = (0..instance.items()).filter(|&o| top(o) == 0).collect();
    let disliked: Vec<usize> = (0..instance.items()).filter(|&o| top(o) == -1).collect();

    let mut allocation = Allocation::empty(n);
    let mut utility = vec![0i64; n];
    if !liked.is_empty() {
        let binary: Vec<Vec<i64>> = signs
            .iter()
            .map(|row| liked.iter().map(|&o| i64::from(row[o] == 1)).collect())
            .collect();
        let refs: Vec<&[i64]> = binary.iter().map(|r| r.as_slice()).collect();
        let sub = Instance::additive_from_ints(&refs)?;
        let net = build_nash_flow_network(&sub)?;
        let flow = solve(
            net.network(),
            tracer
                .as_deref_mut()
                .map(|t| t as &mut dyn FnMut(TraceEvent)),
        )?;
        let routed = net.flow_to_allocation(&flow)?;
        for (k, &item) in liked.iter().enumerate() {
            let agent = routed.owner(k).expect("flow allocates every item");
            allocation.assign(agent, item);
            utility[agent] += 1;
            emit(&mut tracer, || TraceEvent::Assign {
                item,
                agent,
                partial: allocation.clone(),
            });
        }
    }
    for &item in &disliked {
        let agent = (0..n).fold(
            0,
            |best, a| if utility[a] > utility[best] { a } else { best },
        );
        utility[agent] -= 1;
        allocation.assign(agent, item);
        emit(&mut tracer, || TraceEvent::Assign {
            item,
            agent,
            partial: allocation.clone(),
        });
    }
    for &item in &neutral {
        let agent = (0..n)
            .filter(|&a| signs[a][item] == 0)
            .min_by_key(|&a| (utility[a], a))
            .expect("some agent is indifferent to a neutral item");
        allocation.assign(agent, item);
        emit(&mut tracer, || TraceEvent::Assign {
            item,
            agent,
            partial: allocation.clone(),
        });
    }
    Ok(allocation)
}
