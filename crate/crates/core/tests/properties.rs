use proptest::prelude::*;

use gefkit::algorithms::{min_cost_integer_flow, FlowNetwork};
use gefkit::io::{allocation_to_json, instance_to_json, parse_allocation, parse_instance};
use gefkit::welfare::{is_pareto_optimal_bruteforce, is_pareto_optimal_ternary};
use gefkit::{
    is_group_fair, validate_witness, Allocation, FairnessConcept, GroupOptions, Instance, ItemSet,
    Rational, SearchBound,
};

fn value() -> impl Strategy<Value = Rational> + Clone {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

/// An additive instance with an allocation of all its items.
fn instance_and_allocation(
    max_agents: usize,
    max_items: usize,
    values: impl Strategy<Value = Rational> + Clone,
) -> impl Strategy<Value = (Instance, Allocation)> {
    (1..=max_agents, 0..=max_items).prop_flat_map(move |(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(values.clone(), m), n),
            proptest::collection::vec(0..n, m),
        )
            .prop_map(move |(rows, owners)| {
                (
                    Instance::additive(rows).unwrap(),
                    Allocation::from_owners(n, &owners),
                )
            })
    })
}

fn ternary_value() -> impl Strategy<Value = Rational> + Clone {
    (-1i64..=1).prop_map(Rational::from_integer)
}

/// Multiplies every row by its own positive factor.
fn scale_rows(inst: &Instance, factors: &[i64]) -> Instance {
    let rows = inst
        .additive_rows()
        .unwrap()
        .iter()
        .zip(factors)
        .map(|(row, &f)| row.iter().map(|v| v * &Rational::from_integer(f)).collect())
        .collect();
    Instance::additive(rows).unwrap()
}

proptest! {
    #[test]
    fn bundle_utility_is_sum_of_singletons(
        (inst, _) in instance_and_allocation(3, 6, value()),
        mask in 0u64..64,
    ) {
        let m = inst.items();
        let bundle: ItemSet = (0..m).filter(|o| mask >> o & 1 == 1).collect();
        for agent in 0..inst.agents() {
            let mut sum = Rational::zero();
            for &o in &bundle {
                sum = &sum + &inst.singleton(agent, o).unwrap();
            }
            prop_assert_eq!(inst.bundle_utility(agent, &bundle).unwrap(), sum);
        }
    }

    #[test]
    fn pruning_never_changes_the_verdict(
        (inst, alloc) in instance_and_allocation(3, 4, value()),
    ) {
        for concept in [FairnessConcept::Gef1, FairnessConcept::Gefx, FairnessConcept::Sgef1] {
            let pruned = is_group_fair(&inst, &alloc, concept, GroupOptions::default()).unwrap();
            let full = is_group_fair(
                &inst,
                &alloc,
                concept,
                GroupOptions { bound: SearchBound::DEFAULT, prune: false },
            )
            .unwrap();
            prop_assert_eq!(pruned.holds, full.holds, "{:?}", concept);
            if let Some(w) = &pruned.witness {
                prop_assert!(validate_witness(&inst, &alloc, w).is_ok());
            }
        }
    }

    #[test]
    fn ternary_pareto_test_matches_enumeration(
        (inst, alloc) in instance_and_allocation(3, 5, ternary_value()),
        factors in proptest::collection::vec(1i64..=3, 3),
    ) {
        let inst = scale_rows(&inst, &factors);
        prop_assert_eq!(
            is_pareto_optimal_ternary(&inst, &alloc).unwrap(),
            is_pareto_optimal_bruteforce(&inst, &alloc, SearchBound::DEFAULT).unwrap()
        );
    }

    #[test]
    fn files_round_trip((inst, alloc) in instance_and_allocation(4, 6, value())) {
        let text = instance_to_json(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        prop_assert_eq!(parse_allocation(&allocation_to_json(&alloc)).unwrap(), alloc);
    }

    #[test]
    fn min_cost_flow_matches_enumeration(
        nodes in 2usize..=4,
        raw_edges in proptest::collection::vec((0usize..4, 0usize..4, 0u64..=2, 0i64..=5), 1..=5),
        supply in 0i64..=2,
    ) {
        let mut net = FlowNetwork::new(nodes);
        for &(a, b, cap, cost) in &raw_edges {
            net.add_edge(a % nodes, b % nodes, cap, cost);
        }
        net.set_demand(0, supply);
        net.set_demand(nodes - 1, -supply);
        let best = cheapest_flow_by_enumeration(&net);
        match min_cost_integer_flow(&net) {
            Ok(flow) => {
                prop_assert!(flow.check(&net).is_ok());
                prop_assert_eq!(Some(flow.cost(&net)), best);
            }
            Err(_) => prop_assert_eq!(best, None),
        }
    }
}

fn cheapest_flow_by_enumeration(net: &FlowNetwork) -> Option<num_bigint::BigInt> {
    let edges = net.edges();
    let mut flow = vec![0u64; edges.len()];
    let mut best = None;
    loop {
        let mut balance = vec![0i64; net.nodes()];
        for (e, &f) in edges.iter().zip(&flow) {
            balance[e.from] += f as i64;
            balance[e.to] -= f as i64;
        }
        if balance == net.demands() {
            let cost: num_bigint::BigInt = edges.iter().zip(&flow).map(|(e, &f)| &e.cost * f).sum();
            if best.as_ref().is_none_or(|b| cost < *b) {
                best = Some(cost);
            }
        }
        let mut k = 0;
        loop {
            if k == flow.len() {
                return best;
            }
            if flow[k] < edges[k].capacity {
                flow[k] += 1;
                break;
            }
            flow[k] = 0;
            k += 1;
        }
    }
}
