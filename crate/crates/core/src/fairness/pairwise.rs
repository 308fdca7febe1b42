//! Envy-freeness and its one-item relaxations, and proportionality.

use num_bigint::BigInt;

use super::{CheckReport, FairnessConcept, SearchStats, Witness};
use crate::allocation::{require_total, Allocation};
use crate::error::Result;
use crate::instance::{iter_mask, Instance};
use crate::valuation::Scaled;

/// First ordered pair `(i, j)`, `i != j`, for which `violates` holds.
fn first_pair(
    instance: &Instance,
    allocation: &Allocation,
    concept: FairnessConcept,
    violates: impl Fn(&Scaled, usize, u64, u64) -> bool,
) -> Result<CheckReport> {
    require_total(instance, allocation)?;
    let scaled = Scaled::new(instance)?;
    let masks = allocation.masks(instance.items())?;
    let mut stats = SearchStats::default();
    for i in 0..instance.agents() {
        for j in 0..instance.agents() {
            if i == j {
                continue;
            }
            stats.pairs += 1;
            if violates(&scaled, i, masks[i], masks[j]) {
                let witness = Witness::Pair {
                    envious: i,
                    envied: j,
                };
                return Ok(CheckReport::verdict(concept, Some(witness), stats));
            }
        }
    }
    Ok(CheckReport::verdict(concept, None, stats))
}

pub fn is_ef(instance: &Instance, allocation: &Allocation) -> Result<CheckReport> {
    first_pair(
        instance,
        allocation,
        FairnessConcept::Ef,
        |v, i, own, other| v.value(i, other) > v.value(i, own),
    )
}

/// Envy that survives removing any single item from either bundle.
pub fn is_ef1(instance: &Instance, allocation: &Allocation) -> Result<CheckReport> {
    first_pair(
        instance,
        allocation,
        FairnessConcept::Ef1,
        |v, i, own, other| {
            let envies = |own: u64, other: u64| v.value(i, other) > v.value(i, own);
            envies(own, other)
                && iter_mask(own).all(|o| envies(own & !(1 << o), other))
                && iter_mask(other).all(|o| envies(own, other & !(1 << o)))
        },
    )
}

/// Envy that survives some removal of an own chore or of one of the other
/// bundle's goods; with nothing removable, plain envy counts.
pub fn is_efx(instance: &Instance, allocation: &Allocation) -> Result<CheckReport> {
    first_pair(
        instance,
        allocation,
        FairnessConcept::Efx,
        |v, i, own, other| {
            let envies = |own: u64, other: u64| v.value(i, other) > v.value(i, own);
            let (_, own_chores) = v.split(i, own);
            let (other_goods, _) = v.split(i, other);
            if own_chores == 0 && other_goods == 0 {
                return envies(own, other);
            }
            iter_mask(own_chores).any(|o| envies(own & !(1 << o), other))
                || iter_mask(other_goods).any(|o| envies(own, other & !(1 << o)))
        },
    )
}

/// Every agent gets at least a `1/n` share of her value for all items.
pub fn is_prop(instance: &Instance, allocation: &Allocation) -> Result<CheckReport> {
    require_total(instance, allocation)?;
    let scaled = Scaled::new(instance)?;
    let masks = allocation.masks(instance.items())?;
    let n = BigInt::from(instance.agents());
    let all = if instance.items() == 64 {
        u64::MAX
    } else {
        (1u64 << instance.items()) - 1
    };
    let mut stats = SearchStats::default();
    for (agent, &mask) in masks.iter().enumerate() {
        stats.pairs += 1;
        if &n * scaled.value(agent, mask) < scaled.value(agent, all) {
            return Ok(CheckReport::verdict(
                FairnessConcept::Prop,
                Some(Witness::Agent { agent }),
                stats,
            ));
        }
    }
    Ok(CheckReport::verdict(FairnessConcept::Prop, None, stats))
}
