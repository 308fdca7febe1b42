//! Allocations produced by the algorithms that satisfy the pairwise
//! guarantees but still admit a group reallocation where a zero-utility
//! agent fills out the receiving group.

use gefkit::algorithms::{egal_sequential, ternary_flow};
use gefkit::fairness::is_efx;
use gefkit::welfare::{
    is_pareto_optimal_ternary, leximin_optimal_bruteforce, leximin_vector, utilities,
};
use gefkit::{
    is_group_fair, validate_witness, Allocation, FairnessConcept, GroupOptions, Instance,
    SearchBound,
};

fn gef1_witness_with_idle_agent(inst: &Instance, alloc: &Allocation) {
    let report =
        is_group_fair(inst, alloc, FairnessConcept::Gef1, GroupOptions::default()).unwrap();
    assert!(!report.holds);
    let witness = report.witness.as_ref().unwrap();
    validate_witness(inst, alloc, witness).unwrap();
    let w = report.group_witness().unwrap();
    let values = utilities(inst, alloc).unwrap();
    let idle =
        w.s.iter()
            .zip(&w.realloc)
            .any(|(&a, bundle)| values.values()[a].is_zero() && bundle.is_empty());
    assert!(idle, "{w:?}");
}

#[test]
fn egal_sequential_efx_output_can_fail_gef1() {
    let row: &[i64] = &[-3, 5, 3, 5];
    let inst = Instance::additive_from_ints(&[row, row, row, row]).unwrap();
    let alloc = egal_sequential(&inst).unwrap();
    assert!(is_efx(&inst, &alloc).unwrap().holds);
    gef1_witness_with_idle_agent(&inst, &alloc);
}

#[test]
fn egal_sequential_goods_with_two_empty_agents_fails_gef1() {
    let row: &[i64] = &[2, 4];
    let inst = Instance::additive_from_ints(&[row, row, row, row]).unwrap();
    let alloc = egal_sequential(&inst).unwrap();
    assert!(is_efx(&inst, &alloc).unwrap().holds);
    gef1_witness_with_idle_agent(&inst, &alloc);
}

#[test]
fn leximin_ternary_output_can_fail_gef1() {
    let inst = Instance::additive_from_ints(&[
        &[0, 3, 0, -3, 3, 3, -3],
        &[0, -3, 0, 0, 0, -3, 0],
        &[1, -1, 1, 0, 1, 1, 1],
        &[-3, -3, 3, -3, 0, 3, 0],
    ])
    .unwrap();
    let alloc = ternary_flow(&inst).unwrap();
    let norm = inst.normalize_ternary().unwrap();
    let best = leximin_optimal_bruteforce(&norm, SearchBound::DEFAULT).unwrap();
    assert_eq!(
        leximin_vector(&norm, &alloc).unwrap(),
        leximin_vector(&norm, &best).unwrap()
    );
    assert!(is_pareto_optimal_ternary(&inst, &alloc).unwrap());
    gef1_witness_with_idle_agent(&inst, &alloc);
}
