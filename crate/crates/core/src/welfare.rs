//! Pareto dominance, Nash welfare, the leximin order and exhaustive optima.
//!
//! The `*_bruteforce` routines enumerate all `n^m` allocations with the
//! mixed-radix counter from [`crate::search`]: items in index order, item 0
//! most significant, agents in index order. The first optimum found wins ties.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::allocation::{require_total, Allocation};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::search::{for_each_assignment, SearchBound};
use crate::valuation::Scaled;

/// How the entries of a [`UtilityVector`] are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorOrder {
    /// Entry `k` belongs to the `k`-th agent of the group.
    Agents,
    /// Sorted ascending, as used by the leximin order.
    Ascending,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityVector {
    values: Vec<Rational>,
    order: VectorOrder,
}

impl UtilityVector {
    pub fn by_agent(values: Vec<Rational>) -> Self {
        UtilityVector {
            values,
            order: VectorOrder::Agents,
        }
    }

    /// Wraps an already ascending vector.
    pub fn ascending(values: Vec<Rational>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Unsorted);
        }
        Ok(UtilityVector {
            values,
            order: VectorOrder::Ascending,
        })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        UtilityVector::by_agent(values.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn sorted(&self) -> UtilityVector {
        let mut values = self.values.clone();
        values.sort();
        UtilityVector {
            values,
            order: VectorOrder::Ascending,
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn order(&self) -> VectorOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `u` Pareto-dominates `v`: weakly better everywhere, strictly somewhere.
pub fn pareto_dominates(u: &UtilityVector, v: &UtilityVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut strict = false;
    for (a, b) in u.values.iter().zip(&v.values) {
        match a.cmp(b) {
            Ordering::Less => return Ok(false),
            Ordering::Greater => strict = true,
            Ordering::Equal => {}
        }
    }
    Ok(strict)
}

/// Lexicographic comparison of ascending vectors; `Greater` means `u`
/// leximin-dominates `v`.
pub fn leximin_compare(u: &UtilityVector, v: &UtilityVector) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    for w in [u, v] {
        if w.values.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::Unsorted);
        }
    }
    Ok(u.values.cmp(&v.values))
}

/// Per-agent bundle utilities of a total allocation.
pub fn utilities(instance: &Instance, allocation: &Allocation) -> Result<UtilityVector> {
    require_total(instance, allocation)?;
    let values = (0..instance.agents())
        .map(|a| instance.bundle_utility(a, allocation.bundle(a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UtilityVector::by_agent(values))
}

/// Ascending vector of bundle utilities.
pub fn leximin_vector(instance: &Instance, allocation: &Allocation) -> Result<UtilityVector> {
    Ok(utilities(instance, allocation)?.sorted())
}

/// Product of absolute bundle utilities.
pub fn nash_welfare(instance: &Instance, allocation: &Allocation) -> Result<Rational> {
    Ok(utilities(instance, allocation)?
        .values
        .iter()
        .fold(Rational::one(), |acc, u| acc * u.abs()))
}

/// Scaled utilities of the allocation encoded by `owners` into `out`.
fn owner_utilities(scaled: &Scaled, owners: &[usize], masks: &mut [u64], out: &mut [BigInt]) {
    match scaled.rows() {
        Some(rows) => {
            out.iter_mut().for_each(|u| u.set_zero());
            for (item, &agent) in owners.iter().enumerate() {
                out[agent] += &rows[agent][item];
            }
        }
        None => {
            masks.iter_mut().for_each(|m| *m = 0);
            for (item, &agent) in owners.iter().enumerate() {
                masks[agent] |= 1 << item;
            }
            for (agent, u) in out.iter_mut().enumerate() {
                *u = scaled.value(agent, masks[agent]);
            }
        }
    }
}

/// First allocation in enumeration order that Pareto-dominates `allocation`.
pub fn pareto_dominator_bruteforce(
    instance: &Instance,
    allocation: &Allocation,
    bound: SearchBound,
) -> Result<Option<Allocation>> {
    require_total(instance, allocation)?;
    let n = instance.agents();
    let m = instance.items();
    bound.check_power("Pareto enumeration", n, m)?;
    let scaled = Scaled::new(instance)?;
    let current: Vec<BigInt> = allocation
        .masks(m)?
        .iter()
        .enumerate()
        .map(|(a, &mask)| scaled.value(a, mask))
        .collect();
    let mut masks = vec![0u64; n];
    let mut utils = vec![BigInt::zero(); n];
    let found = for_each_assignment(n, m, |owners| {
        owner_utilities(&scaled, owners, &mut masks, &mut utils);
        let mut strict = false;
        for (new, old) in utils.iter().zip(&current) {
            match new.cmp(old) {
                Ordering::Less => return ControlFlow::Continue(()),
                Ordering::Greater => strict = true,
                Ordering::Equal => {}
            }
        }
        if strict {
            ControlFlow::Break(owners.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found.map(|owners| Allocation::from_owners(n, &owners)))
}

/// Exhaustive Pareto-optimality test.
pub fn is_pareto_optimal_bruteforce(
    instance: &Instance,
    allocation: &Allocation,
    bound: SearchBound,
) -> Result<bool> {
    Ok(pareto_dominator_bruteforce(instance, allocation, bound)?.is_none())
}

/// Pareto-optimality for ternary symmetric profiles: every item sits with an
/// agent whose sign for it is the largest sign any agent has.
pub fn is_pareto_optimal_ternary(instance: &Instance, allocation: &Allocation) -> Result<bool> {
    let view = instance.ternary_view()?;
    require_total(instance, allocation)?;
    for item in 0..instance.items() {
        let holder = allocation.owner(item).expect("total allocation");
        let best = view
            .signs
            .iter()
            .map(|row| row[item])
            .max()
            .expect("at least one agent");
        if view.signs[holder][item] != best {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Leximin-optimal allocation by exhaustive search.
pub fn leximin_optimal_bruteforce(instance: &Instance, bound: SearchBound) -> Result<Allocation> {
    let n = instance.agents();
    let m = instance.items();
    bound.check_power("leximin enumeration", n, m)?;
    let scaled = Scaled::new(instance)?;
    let mut masks = vec![0u64; n];
    let mut utils = vec![BigInt::zero(); n];
    let mut sorted = vec![BigInt::zero(); n];
    let mut best: Option<(Vec<BigInt>, Vec<usize>)> = None;
    for_each_assignment::<()>(n, m, |owners| {
        owner_utilities(&scaled, owners, &mut masks, &mut utils);
        sorted.clone_from_slice(&utils);
        sorted.sort();
        let better = match &best {
            None => true,
            Some((b, _)) => sorted > *b,
        };
        if better {
            best = Some((sorted.clone(), owners.to_vec()));
        }
        ControlFlow::Continue(())
    });
    let (_, owners) = best.expect("at least one allocation");
    Ok(Allocation::from_owners(n, &owners))
}

/// Nash-welfare-maximal allocation by exhaustive search.
pub fn nash_optimal_bruteforce(instance: &Instance, bound: SearchBound) -> Result<Allocation> {
    let n = instance.agents();
    let m = instance.items();
    bound.check_power("Nash welfare enumeration", n, m)?;
    let scaled = Scaled::new(instance)?;
    let mut masks = vec![0u64; n];
    let mut utils = vec![BigInt::zero(); n];
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for_each_assignment::<()>(n, m, |owners| {
        owner_utilities(&scaled, owners, &mut masks, &mut utils);
        let product = utils.iter().fold(BigInt::one(), |acc, u| acc * u.abs());
        if best.as_ref().is_none_or(|(b, _)| product > *b) {
            best = Some((product, owners.to_vec()));
        }
        ControlFlow::Continue(())
    });
    let (_, owners) = best.expect("at least one allocation");
    Ok(Allocation::from_owners(n, &owners))
}
