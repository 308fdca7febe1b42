//! The cost-flow network whose minimum-cost integer flows are Nash-welfare
//! and leximin optimal allocations for binary goods.
//!
//! Node layout: source `0`, sink `1`, agents `2..2+n`, items `2+n..2+n+m`,
//! then for each agent `i` a chain of tail nodes `t(i, 1..=m)`. Every edge has
//! capacity 1; the edge into the `j`-th tail node of agent `i` costs `n^j`,
//! so an agent's `j`-th item is charged `n^j` and flows spread items evenly.

use num_bigint::BigInt;
use num_traits::One;

use super::flow::{FlowNetwork, IntegerFlow};
use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashFlowNetwork {
    network: FlowNetwork,
    agents: usize,
    items: usize,
    /// `(item, agent, edge)` for each item-to-agent edge.
    item_edges: Vec<(usize, usize, usize)>,
    /// `tail_edges[i][j - 1]` = (edge into `t(i, j)`, edge from it to the sink).
    tail_edges: Vec<Vec<(usize, usize)>>,
}

impl NashFlowNetwork {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn agent_node(&self, agent: usize) -> usize {
        2 + agent
    }

    pub fn item_node(&self, item: usize) -> usize {
        2 + self.agents + item
    }

    /// Node `t(agent, j)`, `1 <= j <= m`.
    pub fn tail_node(&self, agent: usize, j: usize) -> usize {
        2 + self.agents + self.items + agent * self.items + (j - 1)
    }

    /// Edge index of `(agent, t(agent, j))`.
    pub fn tail_edge(&self, agent: usize, j: usize) -> usize {
        self.tail_edges[agent][j - 1].0
    }

    /// Edge index of `(item, agent)`, if the agent values the item.
    pub fn item_edge(&self, item: usize, agent: usize) -> Option<usize> {
        self.item_edges
            .iter()
            .find(|&&(o, a, _)| o == item && a == agent)
            .map(|&(_, _, e)| e)
    }

    /// Allocation routed by a realizable flow whose tail edges are filled
    /// lowest index first.
    pub fn flow_to_allocation(&self, flow: &IntegerFlow) -> Result<Allocation> {
        flow.check(&self.network)?;
        let mut owners = vec![usize::MAX; self.items];
        for &(item, agent, edge) in &self.item_edges {
            if flow.flow[edge] == 1 {
                owners[item] = agent;
            }
        }
        let allocation = Allocation::from_owners(self.agents, &owners);
        for (agent, tails) in self.tail_edges.iter().enumerate() {
            let count = allocation.bundle(agent).len();
            for (j, &(into, _)) in tails.iter().enumerate() {
                if (flow.flow[into] == 1) != (j < count) {
                    return Err(Error::InvalidFlow(format!(
                        "tail edges of agent {agent} are not filled lowest index first"
                    )));
                }
            }
        }
        Ok(allocation)
    }

    /// The canonical flow routing `allocation`.
    pub fn allocation_to_flow(&self, allocation: &Allocation) -> Result<IntegerFlow> {
        if allocation.agents() != self.agents {
            return Err(Error::InvalidFlow(format!(
                "expected {} bundles",
                self.agents
            )));
        }
        let mut flow = vec![0u64; self.network.edges().len()];
        for item in 0..self.items {
            let agent = allocation
                .owner(item)
                .ok_or_else(|| Error::InvalidFlow(format!("item {item} unallocated")))?;
            let edge = self.item_edge(item, agent).ok_or_else(|| {
                Error::InvalidFlow(format!("agent {agent} does not value item {item}"))
            })?;
            flow[edge] = 1;
            // source edges come first, one per item
            flow[item] = 1;
        }
        if allocation
            .bundles()
            .iter()
            .flatten()
            .any(|&o| o >= self.items)
        {
            return Err(Error::InvalidFlow(
                "allocation mentions unknown items".into(),
            ));
        }
        for (agent, tails) in self.tail_edges.iter().enumerate() {
            for &(into, out) in tails.iter().take(allocation.bundle(agent).len()) {
                flow[into] = 1;
                flow[out] = 1;
            }
        }
        let flow = IntegerFlow { flow };
        flow.check(&self.network)?;
        Ok(flow)
    }
}

/// Builds the network for a profile with singleton values in `{0, 1}` where
/// every item is valued by someone.
pub fn build_nash_flow_network(instance: &Instance) -> Result<NashFlowNetwork> {
    let rows = instance.additive_rows().ok_or(Error::NotAdditive)?;
    if !instance.is_binary() {
        return Err(Error::InvalidNetwork("utilities must be 0 or 1".into()));
    }
    let n = instance.agents();
    let m = instance.items();
    let one = Rational::one();
    if let Some(item) = (0..m).find(|&o| rows.iter().all(|r| r[o] != one)) {
        return Err(Error::InvalidNetwork(format!(
            "item {item} is valued by no agent"
        )));
    }
    let mut network = FlowNetwork::new(2 + n + m + n * m);
    network.set_demand(SOURCE, m as i64);
    network.set_demand(SINK, -(m as i64));
    for o in 0..m {
        network.add_edge(SOURCE, 2 + n + o, 1, 0);
    }
    let mut item_edges = Vec::new();
    for o in 0..m {
        for (a, row) in rows.iter().enumerate() {
            if row[o] == one {
                item_edges.push((o, a, network.add_edge(2 + n + o, 2 + a, 1, 0)));
            }
        }
    }
    let base = BigInt::from(n);
    let mut tail_edges = Vec::with_capacity(n);
    for a in 0..n {
        let mut cost = BigInt::one();
        let mut tails = Vec::with_capacity(m);
        for j in 1..=m {
            cost *= &base;
            let tail = 2 + n + m + a * m + (j - 1);
            let into = network.add_edge(2 + a, tail, 1, cost.clone());
            let out = network.add_edge(tail, SINK, 1, 0);
            tails.push((into, out));
        }
        tail_edges.push(tails);
    }
    Ok(NashFlowNetwork {
        network,
        agents: n,
        items: m,
        item_edges,
        tail_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::flow::min_cost_integer_flow;
    use crate::fixtures;
    use crate::welfare::leximin_vector;

    fn binary_of_single_peaked() -> Instance {
        let ex1 = fixtures::single_peaked_four_agents();
        let rows: Vec<Vec<i64>> = ex1
            .additive_rows()
            .unwrap()
            .iter()
            .map(|r| r.iter().map(|v| i64::from(v.is_positive())).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Instance::additive_from_ints(&refs).unwrap()
    }

    #[test]
    fn single_peaked_network_shape() {
        let net = build_nash_flow_network(&binary_of_single_peaked()).unwrap();
        assert_eq!(net.network().nodes(), 46);
        assert_eq!(net.network().demand(SOURCE), 8);
        assert_eq!(net.network().demand(SINK), -8);
        assert_eq!(
            net.network().edges()[net.tail_edge(0, 2)].cost,
            BigInt::from(16)
        );
        assert_eq!(
            net.network().edges()[net.tail_edge(3, 4)].cost,
            BigInt::from(256)
        );
        assert!(net.item_edge(0, 0).is_none());
        assert!(net.item_edge(2, 0).is_some());
    }

    #[test]
    fn single_peaked_optimum_is_balanced() {
        let inst = binary_of_single_peaked();
        let net = build_nash_flow_network(&inst).unwrap();
        let flow = min_cost_integer_flow(net.network()).unwrap();
        let alloc = net.flow_to_allocation(&flow).unwrap();
        let v: Vec<Rational> = leximin_vector(&inst, &alloc).unwrap().values().to_vec();
        assert_eq!(v, vec![Rational::from(2); 4]);
        assert_eq!(net.allocation_to_flow(&alloc).unwrap(), flow);
    }

    #[test]
    fn single_agent_single_item() {
        let inst = Instance::additive_from_ints(&[&[1]]).unwrap();
        let net = build_nash_flow_network(&inst).unwrap();
        let flow = min_cost_integer_flow(net.network()).unwrap();
        assert_eq!(flow.cost(net.network()), BigInt::from(1));
        assert_eq!(
            net.flow_to_allocation(&flow).unwrap(),
            Allocation::from_slices(&[&[0]])
        );
    }

    #[test]
    fn two_agents_split_two_items() {
        let inst = Instance::additive_from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        let net = build_nash_flow_network(&inst).unwrap();
        let flow = min_cost_integer_flow(net.network()).unwrap();
        assert_eq!(flow.cost(net.network()), BigInt::from(4));
        let lopsided = net
            .allocation_to_flow(&Allocation::from_slices(&[&[0, 1], &[]]))
            .unwrap();
        assert_eq!(lopsided.cost(net.network()), BigInt::from(6));
        let alloc = net.flow_to_allocation(&flow).unwrap();
        assert_eq!(alloc.bundle(0).len(), 1);
    }

    #[test]
    fn no_items() {
        let inst = Instance::additive_from_ints(&[&[], &[]]).unwrap();
        let net = build_nash_flow_network(&inst).unwrap();
        let flow = min_cost_integer_flow(net.network()).unwrap();
        assert!(flow.flow.is_empty());
        let empty = Allocation::from_slices(&[&[], &[]]);
        assert_eq!(net.flow_to_allocation(&flow).unwrap(), empty);
        assert_eq!(net.allocation_to_flow(&empty).unwrap(), flow);
    }

    #[test]
    fn non_canonical_tail_fill_is_rejected() {
        let inst = Instance::additive_from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        let net = build_nash_flow_network(&inst).unwrap();
        let mut flow = net
            .allocation_to_flow(&Allocation::from_slices(&[&[0], &[1]]))
            .unwrap();
        let first = net.tail_edge(0, 1);
        let second = net.tail_edge(0, 2);
        flow.flow[first] = 0;
        flow.flow[first + 1] = 0;
        flow.flow[second] = 1;
        flow.flow[second + 1] = 1;
        flow.check(net.network()).unwrap();
        assert!(matches!(
            net.flow_to_allocation(&flow),
            Err(Error::InvalidFlow(_))
        ));
    }

    #[test]
    fn input_checks() {
        let unvalued = Instance::additive_from_ints(&[&[1, 0], &[1, 0]]).unwrap();
        assert!(build_nash_flow_network(&unvalued).is_err());
        let not_binary = Instance::additive_from_ints(&[&[2]]).unwrap();
        assert!(build_nash_flow_network(&not_binary).is_err());
        let inst = Instance::additive_from_ints(&[&[1, 0], &[0, 1]]).unwrap();
        let net = build_nash_flow_network(&inst).unwrap();
        assert!(net
            .allocation_to_flow(&Allocation::from_slices(&[&[1], &[0]]))
            .is_err());
    }
}
