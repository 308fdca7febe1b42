//! Exhaustive search for group envy witnesses.
//!
//! For each candidate `(S, T)` the items of `T` are handed out to `S` by a
//! depth-first search (item 0 decided first, agents tried in index order), so
//! reallocations are visited in the same lexicographic order as the
//! brute-force welfare oracles. Everything is compared in scaled integers:
//! the test `|S|/|T| * u(new) >= u(old)` becomes `|S| * u(new) >= |T| * u(old)`.
//!
//! A removable item for agent `i` is a chore of her current bundle or a good
//! of her new bundle. Removing it changes only the side(s) where it plays
//! that role. With `diff(o) = |S| u(new \ o) - |T| u(old \ o)`:
//!
//! * up-to-one notions are violated when every agent keeps a non-negative
//!   gain under her worst choice among "no removal" and the removable items,
//!   and some agent keeps a positive one;
//! * up-to-any notions are violated when the same holds for every agent's
//!   best removable item (no removal if she has none).

use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    CheckReport, FairnessConcept, GroupWitness, Pairing, Relaxation, SearchStats, Witness,
};
use crate::allocation::{require_total, Allocation};
use crate::error::{Error, Result};
use crate::instance::{items_of_mask, iter_mask, Instance};
use crate::search::SearchBound;
use crate::valuation::Scaled;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    pub bound: SearchBound,
    /// Skip provably hopeless pairs and branches (additive profiles only).
    pub prune: bool,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            bound: SearchBound::DEFAULT,
            prune: true,
        }
    }
}

impl GroupOptions {
    pub fn with_bound(bound: SearchBound) -> Self {
        GroupOptions {
            bound,
            ..GroupOptions::default()
        }
    }
}

/// Nonempty agent subsets ordered by size, then lexicographically.
fn ordered_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|m| iter_mask(m).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

pub fn is_group_fair(
    instance: &Instance,
    allocation: &Allocation,
    concept: FairnessConcept,
    options: GroupOptions,
) -> Result<CheckReport> {
    let (pairing, relax) = concept.group_shape().ok_or_else(|| {
        Error::InvalidArgument(format!("{concept} is not a group fairness concept"))
    })?;
    require_total(instance, allocation)?;
    let n = instance.agents();
    options.bound.check_power("group pairs", 4, n)?;
    let scaled = Scaled::new(instance)?;
    let masks = allocation.masks(instance.items())?;
    let subsets = ordered_subsets(n);
    let everyone: Vec<usize> = (0..n).collect();
    let mut stats = SearchStats::default();

    for s in &subsets {
        let targets: Vec<&Vec<usize>> = match pairing {
            Pairing::EqualSize => subsets.iter().filter(|t| t.len() == s.len()).collect(),
            Pairing::AnySize => subsets.iter().collect(),
            Pairing::WholeSociety => vec![&everyone],
        };
        for t in targets {
            stats.pairs += 1;
            let mut search = PairSearch::new(&scaled, &masks, s, t, relax, options.prune);
            if search.hopeless() {
                continue;
            }
            options.bound.check_power(
                "reallocations of one group pair",
                s.len(),
                search.items.len(),
            )?;
            let found = search.run();
            stats.reallocations += search.leaves;
            if let Some((bundles, removals)) = found {
                let witness = GroupWitness {
                    concept,
                    s: s.clone(),
                    t: t.clone(),
                    realloc: bundles.into_iter().map(items_of_mask).collect(),
                    removals,
                };
                return Ok(CheckReport::verdict(
                    concept,
                    Some(Witness::Group(witness)),
                    stats,
                ));
            }
        }
    }
    Ok(CheckReport::verdict(concept, None, stats))
}

struct PairSearch<'a> {
    scaled: &'a Scaled,
    relax: Relaxation,
    prune: bool,
    /// Multipliers of the new and old sides.
    s_len: BigInt,
    t_len: BigInt,
    agents: Vec<usize>,
    old_masks: Vec<u64>,
    old_values: Vec<BigInt>,
    /// Items of `T` in the order they are decided.
    items: Vec<usize>,
    new_masks: Vec<u64>,
    leaves: u64,
    additive: Option<AdditiveState>,
}

/// Running sums and bounds for the additive fast path.
struct AdditiveState {
    /// `values[k][d]` = value of the `d`-th decided item to agent `s[k]`.
    values: Vec<Vec<BigInt>>,
    /// `remaining[k][d]` = positive value still obtainable from items `d..`.
    remaining: Vec<Vec<BigInt>>,
    new_values: Vec<BigInt>,
    max_goods: Vec<BigInt>,
    /// `|T| * u(old)`, plus `|T| *` the largest own chore for up-to-one.
    targets: Vec<BigInt>,
    /// `|T| * u(old)`.
    floors: Vec<BigInt>,
}

impl<'a> PairSearch<'a> {
    fn new(
        scaled: &'a Scaled,
        masks: &[u64],
        s: &[usize],
        t: &[usize],
        relax: Relaxation,
        prune: bool,
    ) -> Self {
        let old_masks: Vec<u64> = s.iter().map(|&a| masks[a]).collect();
        let old_values: Vec<BigInt> = s
            .iter()
            .zip(&old_masks)
            .map(|(&a, &m)| scaled.value(a, m))
            .collect();
        let pool = t.iter().fold(0u64, |acc, &a| acc | masks[a]);
        let items: Vec<usize> = iter_mask(pool).collect();
        let s_len = BigInt::from(s.len());
        let t_len = BigInt::from(t.len());
        let additive = scaled.rows().map(|rows| {
            let values: Vec<Vec<BigInt>> = s
                .iter()
                .map(|&a| items.iter().map(|&o| rows[a][o].clone()).collect())
                .collect();
            let remaining = values
                .iter()
                .map(|row| {
                    let mut acc = vec![BigInt::zero(); row.len() + 1];
                    for d in (0..row.len()).rev() {
                        acc[d] = &acc[d + 1] + row[d].clone().max(BigInt::zero());
                    }
                    acc
                })
                .collect();
            let floors: Vec<BigInt> = old_values.iter().map(|v| &t_len * v).collect();
            let targets = s
                .iter()
                .zip(&old_masks)
                .zip(&floors)
                .map(|((&a, &m), floor)| {
                    if relax == Relaxation::UpToOne {
                        let worst_chore = iter_mask(m)
                            .map(|o| -rows[a][o].clone())
                            .fold(BigInt::zero(), |acc, c| acc.max(c));
                        floor + &t_len * worst_chore
                    } else {
                        floor.clone()
                    }
                })
                .collect();
            AdditiveState {
                values,
                remaining,
                new_values: vec![BigInt::zero(); s.len()],
                max_goods: vec![BigInt::zero(); s.len()],
                targets,
                floors,
            }
        });
        PairSearch {
            scaled,
            relax,
            prune,
            s_len,
            t_len,
            agents: s.to_vec(),
            old_masks,
            old_values,
            items,
            new_masks: vec![0; s.len()],
            leaves: 0,
            additive,
        }
    }

    /// Every violation needs `|S| sum u(new) > |T| sum u(old)` over `S`, and
    /// the left side is at most `|S|` times the best owner's value per item.
    fn hopeless(&self) -> bool {
        if !self.prune {
            return false;
        }
        let Some(rows) = self.scaled.rows() else {
            return false;
        };
        let best: BigInt = self
            .items
            .iter()
            .map(|&o| {
                self.agents
                    .iter()
                    .map(|&a| rows[a][o].clone())
                    .max()
                    .expect("nonempty group")
            })
            .sum();
        let current: BigInt = self.old_values.iter().sum();
        &self.s_len * best <= &self.t_len * current
    }

    fn run(&mut self) -> Option<(Vec<u64>, Vec<Option<usize>>)> {
        self.descend(0)
    }

    fn descend(&mut self, depth: usize) -> Option<(Vec<u64>, Vec<Option<usize>>)> {
        if depth == self.items.len() {
            self.leaves += 1;
            return self
                .evaluate()
                .map(|removals| (self.new_masks.clone(), removals));
        }
        let item = self.items[depth];
        for k in 0..self.agents.len() {
            self.new_masks[k] |= 1 << item;
            let saved = self.additive.as_mut().map(|st| {
                let value = st.values[k][depth].clone();
                st.new_values[k] += &value;
                let saved = st.max_goods[k].clone();
                if value > st.max_goods[k] {
                    st.max_goods[k] = value;
                }
                saved
            });
            let viable = !self.prune || self.viable(depth + 1);
            let found = if viable {
                self.descend(depth + 1)
            } else {
                None
            };
            self.new_masks[k] &= !(1 << item);
            if let (Some(st), Some(saved)) = (self.additive.as_mut(), saved) {
                st.new_values[k] -= &st.values[k][depth];
                st.max_goods[k] = saved;
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Whether every agent can still end with a non-negative gain once the
    /// first `decided` items are placed.
    fn viable(&self, decided: usize) -> bool {
        let Some(st) = &self.additive else {
            return true;
        };
        (0..self.agents.len()).all(|k| {
            let reach = &st.new_values[k] + &st.remaining[k][decided];
            if &self.s_len * &reach < st.targets[k] {
                return false;
            }
            if self.relax == Relaxation::UpToOne {
                let after_good = reach - &st.max_goods[k];
                if &self.s_len * after_good < st.floors[k] {
                    return false;
                }
            }
            true
        })
    }

    /// Removal choices certifying a violation for the current reallocation.
    fn evaluate(&self) -> Option<Vec<Option<usize>>> {
        let mut removals = Vec::with_capacity(self.agents.len());
        let mut strict = false;
        for k in 0..self.agents.len() {
            let (score, removal) = self.agent_score(k);
            if score < BigInt::zero() {
                return None;
            }
            strict |= score > BigInt::zero();
            removals.push(removal);
        }
        strict.then_some(removals)
    }

    /// Gain of agent `s[k]` after her decisive removal, and that removal.
    fn agent_score(&self, k: usize) -> (BigInt, Option<usize>) {
        let agent = self.agents[k];
        let old = self.old_masks[k];
        let new = self.new_masks[k];
        let gain = |new_side: u64, old_side: u64| {
            &self.s_len * self.scaled.value(agent, new_side)
                - &self.t_len * self.scaled.value(agent, old_side)
        };
        let base = match &self.additive {
            Some(st) => &self.s_len * &st.new_values[k] - &self.t_len * &self.old_values[k],
            None => gain(new, old),
        };
        if self.relax == Relaxation::None {
            return (base, None);
        }
        let (_, old_chores) = self.scaled.split(agent, old);
        let (new_goods, _) = self.scaled.split(agent, new);
        let removable = old_chores | new_goods;
        let mut best: Option<(BigInt, Option<usize>)> = match self.relax {
            Relaxation::UpToOne => Some((base.clone(), None)),
            _ => None,
        };
        for o in iter_mask(removable) {
            let bit = 1u64 << o;
            let old_side = if old_chores & bit != 0 {
                old & !bit
            } else {
                old
            };
            let new_side = if new_goods & bit != 0 {
                new & !bit
            } else {
                new
            };
            let score = match self.scaled.rows() {
                Some(rows) => {
                    let mut s = base.clone();
                    if old_side != old {
                        s += &self.t_len * &rows[agent][o];
                    }
                    if new_side != new {
                        s -= &self.s_len * &rows[agent][o];
                    }
                    s
                }
                None => gain(new_side, old_side),
            };
            let better = match (&best, self.relax) {
                (None, _) => true,
                (Some((b, _)), Relaxation::UpToOne) => score < *b,
                (Some((b, _)), _) => score > *b,
            };
            if better {
                best = Some((score, Some(o)));
            }
        }
        best.unwrap_or((base, None))
    }
}
