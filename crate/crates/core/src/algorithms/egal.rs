//! Items by decreasing absolute value: goods to the poorest agent, chores to
//! the richest. With identical utilities every prefix allocation is EFX.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{emit, TraceEvent, Tracer};
use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::common_denominator;

pub fn egal_sequential(instance: &Instance) -> Result<Allocation> {
    run(instance, None)
}

/// As [`egal_sequential`], reporting every assignment.
pub fn egal_sequential_traced(
    instance: &Instance,
    mut on_event: impl FnMut(TraceEvent),
) -> Result<Allocation> {
    run(instance, Some(&mut on_event))
}

fn run(instance: &Instance, mut tracer: Tracer<'_>) -> Result<Allocation> {
    let rows = instance.additive_rows().ok_or(Error::NotAdditive)?;
    if !instance.is_identical() {
        return Err(Error::NotIdentical);
    }
    let n = instance.agents();
    let common = &rows[0];
    let denom = common_denominator(common.iter());
    let values: Vec<BigInt> = common
        .iter()
        .map(|v| v.scaled_integer(&denom).expect("divides"))
        .collect();

    let mut order: Vec<usize> = (0..instance.items()).collect();
    order.sort_by(|&a, &b| values[b].abs().cmp(&values[a].abs()));

    let mut utility = vec![BigInt::zero(); n];
    let mut allocation = Allocation::empty(n);
    for item in order {
        let value = &values[item];
        let agent = if value.is_negative() {
            // richest, lowest index on ties
            (0..n).fold(
                0,
                |best, a| if utility[a] > utility[best] { a } else { best },
            )
        } else {
            (0..n).fold(
                0,
                |best, a| if utility[a] < utility[best] { a } else { best },
            )
        };
        utility[agent] += value;
        allocation.assign(agent, item);
        emit(&mut tracer, || TraceEvent::Assign {
            item,
            agent,
            partial: allocation.clone(),
        });
    }
    Ok(allocation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{is_efx, is_group_fair, FairnessConcept, GroupOptions};

    #[test]
    fn hand_traced_example() {
        let inst = Instance::additive_from_ints(&[&[3, 2, -1], &[3, 2, -1]]).unwrap();
        let alloc = egal_sequential(&inst).unwrap();
        assert_eq!(alloc, Allocation::from_slices(&[&[0, 2], &[1]]));
    }

    #[test]
    fn ties_go_to_the_lowest_index() {
        let inst = Instance::additive_from_ints(&[&[5], &[5], &[5]]).unwrap();
        assert_eq!(
            egal_sequential(&inst).unwrap(),
            Allocation::from_slices(&[&[0], &[], &[]])
        );
    }

    #[test]
    fn zero_items_still_allocated() {
        let inst = Instance::additive_from_ints(&[&[0, 0], &[0, 0]]).unwrap();
        let alloc = egal_sequential(&inst).unwrap();
        assert!(alloc.is_total(&inst));
        assert!(is_efx(&inst, &alloc).unwrap().holds);
    }

    #[test]
    fn stable_order_for_equal_magnitudes() {
        // |2| = |-2|: the good o1 is placed before the chore o2
        let inst = Instance::additive_from_ints(&[&[2, -2], &[2, -2]]).unwrap();
        let mut seen = Vec::new();
        egal_sequential_traced(&inst, |e| {
            if let TraceEvent::Assign { item, agent, .. } = e {
                seen.push((item, agent));
            }
        })
        .unwrap();
        assert_eq!(seen, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn every_prefix_is_efx() {
        let inst = Instance::additive_from_ints(&[
            &[4, -3, 2, -2, 1],
            &[4, -3, 2, -2, 1],
            &[4, -3, 2, -2, 1],
        ])
        .unwrap();
        let mut prefixes = Vec::new();
        let alloc = egal_sequential_traced(&inst, |e| {
            if let TraceEvent::Assign { partial, .. } = e {
                prefixes.push(partial);
            }
        })
        .unwrap();
        for partial in prefixes {
            let scope: Vec<usize> = partial.scope().iter().copied().collect();
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|_| scope.iter().map(|&o| [4, -3, 2, -2, 1][o]).collect())
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let sub = Instance::additive_from_ints(&refs).unwrap();
            let bundles: Vec<Vec<usize>> = partial
                .bundles()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|o| scope.iter().position(|x| x == o).unwrap())
                        .collect()
                })
                .collect();
            let slices: Vec<&[usize]> = bundles.iter().map(|b| b.as_slice()).collect();
            assert!(
                is_efx(&sub, &Allocation::from_slices(&slices))
                    .unwrap()
                    .holds
            );
        }
        assert!(
            is_group_fair(
                &inst,
                &alloc,
                FairnessConcept::Gef1,
                GroupOptions::default()
            )
            .unwrap()
            .holds
        );
    }

    #[test]
    fn rejects_non_identical() {
        let inst = Instance::additive_from_ints(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(egal_sequential(&inst), Err(Error::NotIdentical));
    }
}
