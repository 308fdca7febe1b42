//! Exact minimum-cost flow by successive shortest paths.
//!
//! Demands follow the convention `outflow - inflow = demand`. A super source
//! feeds every positive-demand node and a super sink drains every negative
//! one; shortest paths use Dijkstra on reduced costs with node potentials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{emit, TraceEvent, Tracer};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub cost: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    demands: Vec<i64>,
    edges: Vec<FlowEdge>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            demands: vec![0; nodes],
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.demands.len()
    }

    pub fn demands(&self) -> &[i64] {
        &self.demands
    }

    pub fn demand(&self, node: usize) -> i64 {
        self.demands[node]
    }

    pub fn set_demand(&mut self, node: usize, demand: i64) {
        self.demands[node] = demand;
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    /// Adds an edge and returns its index.
    pub fn add_edge(
        &mut self,
        from: usize,
        to: usize,
        capacity: u64,
        cost: impl Into<BigInt>,
    ) -> usize {
        self.edges.push(FlowEdge {
            from,
            to,
            capacity,
            cost: cost.into(),
        });
        self.edges.len() - 1
    }

    fn validate(&self) -> Result<()> {
        if self.demands.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidNetwork("demands do not sum to zero".into()));
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.from >= self.nodes() || e.to >= self.nodes() {
                return Err(Error::InvalidNetwork(format!(
                    "edge {k} has an endpoint out of range"
                )));
            }
            if e.cost.is_negative() {
                return Err(Error::InvalidNetwork(format!("edge {k} has negative cost")));
            }
        }
        Ok(())
    }
}

/// Flow on each edge of a network, indexed like [`FlowNetwork::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerFlow {
    pub flow: Vec<u64>,
}

impl IntegerFlow {
    pub fn cost(&self, network: &FlowNetwork) -> BigInt {
        network
            .edges
            .iter()
            .zip(&self.flow)
            .map(|(e, &f)| &e.cost * f)
            .sum()
    }

    /// Checks capacities and that every node's balance equals its demand.
    pub fn check(&self, network: &FlowNetwork) -> Result<()> {
        if self.flow.len() != network.edges.len() {
            return Err(Error::InvalidFlow(format!(
                "{} flow values for {} edges",
                self.flow.len(),
                network.edges.len()
            )));
        }
        let mut balance = vec![0i128; network.nodes()];
        for (k, (e, &f)) in network.edges.iter().zip(&self.flow).enumerate() {
            if f > e.capacity {
                return Err(Error::InvalidFlow(format!(
                    "edge {k} carries {f} over capacity {}",
                    e.capacity
                )));
            }
            balance[e.from] += i128::from(f);
            balance[e.to] -= i128::from(f);
        }
        for (node, (&b, &d)) in balance.iter().zip(&network.demands).enumerate() {
            if b != i128::from(d) {
                return Err(Error::InvalidFlow(format!(
                    "node {node} has balance {b}, demand {d}"
                )));
            }
        }
        Ok(())
    }
}

struct Residual {
    to: usize,
    capacity: u64,
    cost: BigInt,
    /// Index of the paired reverse arc in `arcs`.
    twin: usize,
}

pub fn min_cost_integer_flow(network: &FlowNetwork) -> Result<IntegerFlow> {
    solve(network, None)
}

/// As [`min_cost_integer_flow`], reporting every augmentation.
pub fn min_cost_integer_flow_traced(
    network: &FlowNetwork,
    mut on_event: impl FnMut(TraceEvent),
) -> Result<IntegerFlow> {
    solve(network, Some(&mut on_event))
}

pub(crate) fn solve(network: &FlowNetwork, mut tracer: Tracer<'_>) -> Result<IntegerFlow> {
    network.validate()?;
    let n = network.nodes();
    let source = n;
    let sink = n + 1;
    let total = n + 2;
    let mut arcs: Vec<Residual> = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut add =
        |arcs: &mut Vec<Residual>, from: usize, to: usize, capacity: u64, cost: BigInt| -> usize {
            let k = arcs.len();
            arcs.push(Residual {
                to,
                capacity,
                cost: cost.clone(),
                twin: k + 1,
            });
            arcs.push(Residual {
                to: from,
                capacity: 0,
                cost: -cost,
                twin: k,
            });
            adjacency[from].push(k);
            adjacency[to].push(k + 1);
            k
        };
    let edge_arcs: Vec<usize> = network
        .edges
        .iter()
        .map(|e| add(&mut arcs, e.from, e.to, e.capacity, e.cost.clone()))
        .collect();
    let mut required: u64 = 0;
    for (node, &d) in network.demands.iter().enumerate() {
        if d > 0 {
            add(&mut arcs, source, node, d as u64, BigInt::zero());
            required += d as u64;
        } else if d < 0 {
            add(&mut arcs, node, sink, d.unsigned_abs(), BigInt::zero());
        }
    }

    // all original costs are non-negative, so zero potentials are valid
    let mut potential = vec![BigInt::zero(); total];
    let mut routed: u64 = 0;
    while routed < required {
        let mut dist: Vec<Option<BigInt>> = vec![None; total];
        let mut parent: Vec<Option<usize>> = vec![None; total];
        let mut done = vec![false; total];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(BigInt::zero());
        heap.push(Reverse((BigInt::zero(), source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &k in &adjacency[u] {
                let arc = &arcs[k];
                if arc.capacity == 0 || done[arc.to] {
                    continue;
                }
                let reduced = &arc.cost + &potential[u] - &potential[arc.to];
                let candidate = &d + reduced;
                if dist[arc.to].as_ref().is_none_or(|cur| candidate < *cur) {
                    dist[arc.to] = Some(candidate.clone());
                    parent[arc.to] = Some(k);
                    heap.push(Reverse((candidate, arc.to)));
                }
            }
        }
        if dist[sink].is_none() {
            return Err(Error::InfeasibleFlow(format!(
                "only {routed} of {required} units can be routed"
            )));
        }
        let far = dist.iter().flatten().max().cloned().unwrap_or_default();
        for (p, d) in potential.iter_mut().zip(&dist) {
            *p += d.as_ref().unwrap_or(&far);
        }

        let mut path_arcs = Vec::new();
        let mut node = sink;
        while node != source {
            let k = parent[node].expect("reached nodes have parents");
            path_arcs.push(k);
            node = arcs[arcs[k].twin].to;
        }
        path_arcs.reverse();
        let amount = path_arcs
            .iter()
            .map(|&k| arcs[k].capacity)
            .min()
            .expect("nonempty path")
            .min(required - routed);
        let mut cost = BigInt::zero();
        for &k in &path_arcs {
            arcs[k].capacity -= amount;
            let twin = arcs[k].twin;
            arcs[twin].capacity += amount;
            cost += &arcs[k].cost * amount;
        }
        routed += amount;
        emit(&mut tracer, || {
            let mut path: Vec<usize> = path_arcs.iter().map(|&k| arcs[arcs[k].twin].to).collect();
            path.push(sink);
            path.retain(|&v| v < n);
            TraceEvent::Augment { path, amount, cost }
        });
    }

    let flow = network
        .edges
        .iter()
        .zip(&edge_arcs)
        .map(|(e, &k)| e.capacity - arcs[k].capacity)
        .collect();
    Ok(IntegerFlow { flow })
}
