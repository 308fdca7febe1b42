//! Allocations of items to agents, possibly over a partial scope.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{mask_of, Instance, ItemSet};

/// One bundle per agent, partitioning `scope`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<ItemSet>,
    scope: ItemSet,
}

/// Why an allocation fails to partition its scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllocationViolation {
    AgentCount { expected: usize, found: usize },
    ItemOutOfRange { item: usize },
    Duplicate { item: usize, agents: (usize, usize) },
    Unallocated { item: usize },
    OutsideScope { item: usize, agent: usize },
}

impl fmt::Display for AllocationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllocationViolation::AgentCount { expected, found } => {
                write!(f, "expected {expected} bundles, found {found}")
            }
            AllocationViolation::ItemOutOfRange { item } => {
                write!(f, "item {item} is not in the instance")
            }
            AllocationViolation::Duplicate { item, agents } => {
                write!(
                    f,
                    "item {item} held by agents {} and {}",
                    agents.0, agents.1
                )
            }
            AllocationViolation::Unallocated { item } => write!(f, "item {item} is unallocated"),
            AllocationViolation::OutsideScope { item, agent } => {
                write!(f, "agent {agent} holds item {item} outside the scope")
            }
        }
    }
}

impl Allocation {
    /// Allocation whose scope is the union of `bundles`.
    pub fn from_bundles(bundles: Vec<ItemSet>) -> Self {
        let scope = bundles.iter().flatten().copied().collect();
        Allocation { bundles, scope }
    }

    pub fn with_scope(bundles: Vec<ItemSet>, scope: ItemSet) -> Self {
        Allocation { bundles, scope }
    }

    /// Empty partial allocation for `agents` agents.
    pub fn empty(agents: usize) -> Self {
        Allocation {
            bundles: vec![ItemSet::new(); agents],
            scope: ItemSet::new(),
        }
    }

    /// Allocation from a per-item owner vector; `owners[o]` holds item `o`.
    pub fn from_owners(agents: usize, owners: &[usize]) -> Self {
        let mut bundles = vec![ItemSet::new(); agents];
        for (item, &agent) in owners.iter().enumerate() {
            bundles[agent].insert(item);
        }
        Allocation {
            bundles,
            scope: (0..owners.len()).collect(),
        }
    }

    pub fn from_slices(bundles: &[&[usize]]) -> Self {
        Allocation::from_bundles(
            bundles
                .iter()
                .map(|b| b.iter().copied().collect())
                .collect(),
        )
    }

    pub fn bundles(&self) -> &[ItemSet] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &ItemSet {
        &self.bundles[agent]
    }

    pub fn scope(&self) -> &ItemSet {
        &self.scope
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    /// Gives `item` to `agent`, extending the scope.
    pub fn assign(&mut self, agent: usize, item: usize) {
        self.bundles[agent].insert(item);
        self.scope.insert(item);
    }

    /// Owner of `item`, if any bundle holds it.
    pub fn owner(&self, item: usize) -> Option<usize> {
        self.bundles.iter().position(|b| b.contains(&item))
    }

    /// Union of the bundles of `agents`.
    pub fn items_of(&self, agents: &[usize]) -> ItemSet {
        agents
            .iter()
            .flat_map(|&a| self.bundles[a].iter().copied())
            .collect()
    }

    pub fn is_total(&self, instance: &Instance) -> bool {
        self.scope.len() == instance.items() && self.scope.iter().all(|&o| o < instance.items())
    }

    pub(crate) fn masks(&self, items: usize) -> Result<Vec<u64>> {
        self.bundles.iter().map(|b| mask_of(b, items)).collect()
    }
}

/// Checks the bundles are pairwise disjoint and cover exactly the scope.
pub fn validate_allocation(
    instance: &Instance,
    allocation: &Allocation,
) -> Result<(), AllocationViolation> {
    if allocation.agents() != instance.agents() {
        return Err(AllocationViolation::AgentCount {
            expected: instance.agents(),
            found: allocation.agents(),
        });
    }
    if let Some(&item) = allocation.scope.iter().find(|&&o| o >= instance.items()) {
        return Err(AllocationViolation::ItemOutOfRange { item });
    }
    let mut holder: Vec<Option<usize>> = vec![None; instance.items()];
    for (agent, bundle) in allocation.bundles.iter().enumerate() {
        for &item in bundle {
            if item >= instance.items() {
                return Err(AllocationViolation::ItemOutOfRange { item });
            }
            if let Some(first) = holder[item] {
                return Err(AllocationViolation::Duplicate {
                    item,
                    agents: (first, agent),
                });
            }
            if !allocation.scope.contains(&item) {
                return Err(AllocationViolation::OutsideScope { item, agent });
            }
            holder[item] = Some(agent);
        }
    }
    if let Some(&item) = allocation.scope.iter().find(|&&o| holder[o].is_none()) {
        return Err(AllocationViolation::Unallocated { item });
    }
    Ok(())
}

/// Validates and additionally requires the allocation to cover every item.
pub(crate) fn require_total(instance: &Instance, allocation: &Allocation) -> Result<()> {
    validate_allocation(instance, allocation).map_err(Error::InvalidAllocation)?;
    if !allocation.is_total(instance) {
        return Err(Error::PartialAllocation);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_allocation_is_valid() {
        let inst = fixtures::single_peaked_four_agents();
        let alloc = fixtures::single_peaked_allocation();
        assert_eq!(validate_allocation(&inst, &alloc), Ok(()));
        assert!(alloc.is_total(&inst));
    }

    #[test]
    fn detects_duplicates() {
        let inst = Instance::additive_from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        let alloc = Allocation::from_slices(&[&[0], &[0, 1]]);
        assert_eq!(
            validate_allocation(&inst, &alloc),
            Err(AllocationViolation::Duplicate {
                item: 0,
                agents: (0, 1)
            })
        );
    }

    #[test]
    fn detects_unallocated_scope_items() {
        let inst = Instance::additive_from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        let alloc = Allocation::with_scope(
            vec![[0].into_iter().collect(), ItemSet::new()],
            [0, 1].into_iter().collect(),
        );
        assert_eq!(
            validate_allocation(&inst, &alloc),
            Err(AllocationViolation::Unallocated { item: 1 })
        );
    }

    #[test]
    fn detects_shape_errors() {
        let inst = Instance::additive_from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            validate_allocation(&inst, &Allocation::from_slices(&[&[0, 1]])),
            Err(AllocationViolation::AgentCount {
                expected: 2,
                found: 1
            })
        ));
        assert_eq!(
            validate_allocation(&inst, &Allocation::from_slices(&[&[0, 5], &[1]])),
            Err(AllocationViolation::ItemOutOfRange { item: 5 })
        );
        let outside = Allocation::with_scope(
            vec![[0, 1].into_iter().collect(), ItemSet::new()],
            [0].into_iter().collect(),
        );
        assert_eq!(
            validate_allocation(&inst, &outside),
            Err(AllocationViolation::OutsideScope { item: 1, agent: 0 })
        );
    }

    #[test]
    fn partial_allocations_validate_against_their_scope() {
        let inst = Instance::additive_from_ints(&[&[1, 1, 1], &[1, 1, 1]]).unwrap();
        let mut alloc = Allocation::empty(2);
        alloc.assign(1, 2);
        assert_eq!(validate_allocation(&inst, &alloc), Ok(()));
        assert!(!alloc.is_total(&inst));
        assert_eq!(require_total(&inst, &alloc), Err(Error::PartialAllocation));
    }
}
