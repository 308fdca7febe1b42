//! Re-checks witnesses directly from the definitions in rational arithmetic,
//! sharing nothing with the search code beyond the instance itself.

use std::fmt;

use super::{GroupWitness, Pairing, Relaxation, Witness};
use crate::allocation::{require_total, Allocation};
use crate::instance::{Instance, ItemSet};
use crate::rational::Rational;
use crate::welfare::{pareto_dominates, utilities, UtilityVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRejection(pub String);

impl fmt::Display for WitnessRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for WitnessRejection {}

type Verdict = std::result::Result<(), WitnessRejection>;

fn reject<T>(msg: impl Into<String>) -> std::result::Result<T, WitnessRejection> {
    Err(WitnessRejection(msg.into()))
}

fn lift<T>(r: crate::error::Result<T>) -> std::result::Result<T, WitnessRejection> {
    r.map_err(|e| WitnessRejection(e.to_string()))
}

/// Accepts `witness` only if it certifies a violation of its concept by
/// `allocation`.
pub fn validate_witness(
    instance: &Instance,
    allocation: &Allocation,
    witness: &Witness,
) -> Verdict {
    lift(require_total(instance, allocation))?;
    match witness {
        Witness::Group(w) => validate_group(instance, allocation, w),
        Witness::Pair { envious, envied } => {
            if *envious == *envied || *envious >= instance.agents() || *envied >= instance.agents()
            {
                return reject("pair witness needs two distinct agents");
            }
            let u = |b: &ItemSet| lift(instance.bundle_utility(*envious, b));
            let own = allocation.bundle(*envious);
            let other = allocation.bundle(*envied);
            let envies =
                |own: &ItemSet, other: &ItemSet| -> std::result::Result<bool, WitnessRejection> {
                    Ok(u(other)? > u(own)?)
                };
            if envies(own, other)? {
                Ok(())
            } else {
                reject("no envy between the pair")
            }
        }
        Witness::Agent { agent } => {
            if *agent >= instance.agents() {
                return reject("agent out of range");
            }
            let mine = lift(instance.bundle_utility(*agent, allocation.bundle(*agent)))?;
            let all = lift(instance.bundle_utility(*agent, &instance.all_items()))?;
            if mine * Rational::from(instance.agents() as i64) < all {
                Ok(())
            } else {
                reject("agent receives her proportional share")
            }
        }
        Witness::Dominated { by } => {
            let old = lift(utilities(instance, allocation))?;
            let new = lift(utilities(instance, by))?;
            if lift(pareto_dominates(&new, &old))? {
                Ok(())
            } else {
                reject("allocation does not Pareto-dominate")
            }
        }
    }
}

fn validate_group(instance: &Instance, allocation: &Allocation, w: &GroupWitness) -> Verdict {
    let Some((pairing, relax)) = w.concept.group_shape() else {
        return reject(format!("{} has no group witnesses", w.concept));
    };
    let n = instance.agents();
    for group in [&w.s, &w.t] {
        if group.is_empty()
            || group.windows(2).any(|p| p[0] >= p[1])
            || group.iter().any(|&a| a >= n)
        {
            return reject("groups must be nonempty, ascending and in range");
        }
    }
    match pairing {
        Pairing::EqualSize if w.s.len() != w.t.len() => return reject("groups differ in size"),
        Pairing::WholeSociety if w.t.len() != n => {
            return reject("envied group must be every agent")
        }
        _ => {}
    }
    if w.realloc.len() != w.s.len() || w.removals.len() != w.s.len() {
        return reject("one bundle and one removal per envious agent");
    }
    let pool = allocation.items_of(&w.t);
    let mut seen = ItemSet::new();
    for bundle in &w.realloc {
        for &o in bundle {
            if !seen.insert(o) {
                return reject(format!("item {o} reallocated twice"));
            }
        }
    }
    if seen != pool {
        return reject("reallocation does not partition the envied group's items");
    }
    let factor = Rational::from(w.s.len() as i64) / Rational::from(w.t.len() as i64);

    // per agent: (old bundle, new bundle, old chores, new goods)
    let mut sides = Vec::with_capacity(w.s.len());
    for (k, &agent) in w.s.iter().enumerate() {
        let old = allocation.bundle(agent).clone();
        let new = w.realloc[k].clone();
        let chores = lift(instance.chores_of(agent, &old))?;
        let goods = lift(instance.goods_of(agent, &new))?;
        sides.push((agent, old, new, chores, goods));
    }
    let dominated = |choice: &[Option<usize>]| -> std::result::Result<bool, WitnessRejection> {
        let mut lhs = Vec::with_capacity(choice.len());
        let mut rhs = Vec::with_capacity(choice.len());
        for ((agent, old, new, chores, goods), removal) in sides.iter().zip(choice) {
            let mut old = old.clone();
            let mut new = new.clone();
            if let Some(o) = removal {
                if chores.contains(o) {
                    old.remove(o);
                }
                if goods.contains(o) {
                    new.remove(o);
                }
            }
            lhs.push(&factor * &lift(instance.bundle_utility(*agent, &new))?);
            rhs.push(lift(instance.bundle_utility(*agent, &old))?);
        }
        lift(pareto_dominates(
            &UtilityVector::by_agent(lhs),
            &UtilityVector::by_agent(rhs),
        ))
    };

    let options: Vec<Vec<Option<usize>>> = sides
        .iter()
        .map(|(_, _, _, chores, goods)| {
            let mut opts = vec![None];
            opts.extend(chores.union(goods).map(|&o| Some(o)));
            opts
        })
        .collect();
    for ((_, _, _, chores, goods), removal) in sides.iter().zip(&w.removals) {
        if let Some(o) = removal {
            if !chores.contains(o) && !goods.contains(o) {
                return reject(format!("item {o} is neither an own chore nor a new good"));
            }
        }
    }

    match relax {
        Relaxation::None => {
            if w.removals.iter().any(Option::is_some) {
                return reject("plain group envy takes no removals");
            }
            if dominated(&w.removals)? {
                Ok(())
            } else {
                reject("reallocation does not dominate")
            }
        }
        Relaxation::UpToAny => {
            for (opts, removal) in options.iter().zip(&w.removals) {
                if removal.is_none() && opts.len() > 1 {
                    return reject("an agent with removable items must remove one");
                }
            }
            if dominated(&w.removals)? {
                Ok(())
            } else {
                reject("reallocation does not dominate after the chosen removals")
            }
        }
        Relaxation::UpToOne => {
            // every joint choice of at most one removal per agent must dominate
            let mut index = vec![0usize; options.len()];
            loop {
                let choice: Vec<Option<usize>> =
                    index.iter().zip(&options).map(|(&i, o)| o[i]).collect();
                if !dominated(&choice)? {
                    return reject(format!("removals {choice:?} cancel the domination"));
                }
                let mut pos = index.len();
                loop {
                    if pos == 0 {
                        return Ok(());
                    }
                    pos -= 1;
                    index[pos] += 1;
                    if index[pos] < options[pos].len() {
                        break;
                    }
                    index[pos] = 0;
                }
            }
        }
    }
}
