//! Instances, utility profiles and item classification.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A set of item indices.
pub type ItemSet = BTreeSet<usize>;

/// Largest item count accepted by explicit-table profiles.
pub const MAX_TABLE_ITEMS: usize = 16;

/// Per-agent utilities over bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UtilityProfile {
    /// `rows[agent][item]`; a bundle is worth the sum of its items.
    Additive(Vec<Vec<Rational>>),
    /// `tables[agent][mask]` where bit `k` of `mask` stands for item `k`.
    Table(Vec<Vec<Rational>>),
}

/// How an agent perceives a single item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ItemClass {
    Good,
    Chore,
    Neutral,
}

impl ItemClass {
    fn from_sign(sign: i8) -> Self {
        match sign {
            s if s > 0 => ItemClass::Good,
            s if s < 0 => ItemClass::Chore,
            _ => ItemClass::Neutral,
        }
    }
}

/// Agents, items and their utilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    agents: usize,
    items: usize,
    profile: UtilityProfile,
}

/// Ternary symmetric decomposition: each value equals `signs[i][o] * alpha[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernarySymmetricView {
    pub alpha: Vec<Rational>,
    pub signs: Vec<Vec<i8>>,
}

impl TernarySymmetricView {
    pub fn reconstruct(&self) -> Vec<Vec<Rational>> {
        self.signs
            .iter()
            .zip(&self.alpha)
            .map(|(row, alpha)| {
                row.iter()
                    .map(|&s| alpha * &Rational::from(i64::from(s)))
                    .collect()
            })
            .collect()
    }
}

impl Instance {
    /// Additive instance from a utility matrix with one row per agent.
    pub fn additive(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let agents = rows.len();
        if agents == 0 {
            return Err(Error::InvalidInstance(
                "at least one agent is required".into(),
            ));
        }
        let items = rows[0].len();
        if let Some((agent, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != items) {
            return Err(Error::InvalidInstance(format!(
                "row of agent {agent} has {} values, expected {items}",
                row.len()
            )));
        }
        Ok(Instance {
            agents,
            items,
            profile: UtilityProfile::Additive(rows),
        })
    }

    /// Additive instance from integer utilities.
    pub fn additive_from_ints(rows: &[&[i64]]) -> Result<Self> {
        Instance::additive(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    /// Explicit-table instance; `tables[agent]` holds one value per subset mask.
    pub fn table(agents: usize, items: usize, tables: Vec<Vec<Rational>>) -> Result<Self> {
        if agents == 0 {
            return Err(Error::InvalidInstance(
                "at least one agent is required".into(),
            ));
        }
        if items > MAX_TABLE_ITEMS {
            return Err(Error::InvalidInstance(format!(
                "table profiles support at most {MAX_TABLE_ITEMS} items, got {items}"
            )));
        }
        if tables.len() != agents {
            return Err(Error::InvalidInstance(format!(
                "expected {agents} tables, got {}",
                tables.len()
            )));
        }
        for (agent, table) in tables.iter().enumerate() {
            if table.len() != 1 << items {
                return Err(Error::InvalidInstance(format!(
                    "table of agent {agent} defines {} subsets, expected {}",
                    table.len(),
                    1usize << items
                )));
            }
            if !table[0].is_zero() {
                return Err(Error::InvalidInstance(format!(
                    "agent {agent} values the empty bundle at {}",
                    table[0]
                )));
            }
        }
        Ok(Instance {
            agents,
            items,
            profile: UtilityProfile::Table(tables),
        })
    }

    /// Explicit-table instance from `(agent, subset, value)` entries; every
    /// subset of every agent must be listed exactly once.
    pub fn table_from_entries(
        agents: usize,
        items: usize,
        entries: impl IntoIterator<Item = (usize, ItemSet, Rational)>,
    ) -> Result<Self> {
        if items > MAX_TABLE_ITEMS {
            return Err(Error::InvalidInstance(format!(
                "table profiles support at most {MAX_TABLE_ITEMS} items, got {items}"
            )));
        }
        let mut tables: Vec<Vec<Option<Rational>>> = vec![vec![None; 1 << items]; agents];
        for (agent, subset, value) in entries {
            if agent >= agents {
                return Err(Error::AgentOutOfRange { agent, agents });
            }
            let mask = mask_of(&subset, items)?;
            let slot = &mut tables[agent][mask as usize];
            if slot.is_some() {
                return Err(Error::InvalidInstance(format!(
                    "duplicate table entry for agent {agent}, subset {subset:?}"
                )));
            }
            *slot = Some(value);
        }
        let mut full = Vec::with_capacity(agents);
        for (agent, table) in tables.into_iter().enumerate() {
            let mut row = Vec::with_capacity(table.len());
            for (mask, value) in table.into_iter().enumerate() {
                match value {
                    Some(v) => row.push(v),
                    None => {
                        return Err(Error::InvalidInstance(format!(
                            "table of agent {agent} is missing subset {:?}",
                            items_of_mask(mask as u64)
                        )))
                    }
                }
            }
            full.push(row);
        }
        Instance::table(agents, items, full)
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn profile(&self) -> &UtilityProfile {
        &self.profile
    }

    pub fn all_items(&self) -> ItemSet {
        (0..self.items).collect()
    }

    pub fn is_additive(&self) -> bool {
        matches!(self.profile, UtilityProfile::Additive(_))
    }

    /// The additive utility matrix, if the profile is additive.
    pub fn additive_rows(&self) -> Option<&[Vec<Rational>]> {
        match &self.profile {
            UtilityProfile::Additive(rows) => Some(rows),
            UtilityProfile::Table(_) => None,
        }
    }

    /// Singleton value `u_agent({item})`.
    pub fn singleton(&self, agent: usize, item: usize) -> Result<Rational> {
        self.check_agent(agent)?;
        self.check_item(item)?;
        Ok(match &self.profile {
            UtilityProfile::Additive(rows) => rows[agent][item].clone(),
            UtilityProfile::Table(tables) => tables[agent][1 << item].clone(),
        })
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agents {
            return Err(Error::AgentOutOfRange {
                agent,
                agents: self.agents,
            });
        }
        Ok(())
    }

    pub(crate) fn check_item(&self, item: usize) -> Result<()> {
        if item >= self.items {
            return Err(Error::ItemOutOfRange {
                item,
                items: self.items,
            });
        }
        Ok(())
    }

    /// Utility of `bundle` for `agent`.
    pub fn bundle_utility(&self, agent: usize, bundle: &ItemSet) -> Result<Rational> {
        self.check_agent(agent)?;
        if let Some(&item) = bundle.iter().find(|&&o| o >= self.items) {
            return Err(Error::ItemOutOfRange {
                item,
                items: self.items,
            });
        }
        Ok(match &self.profile {
            UtilityProfile::Additive(rows) => bundle.iter().map(|&o| &rows[agent][o]).sum(),
            UtilityProfile::Table(tables) => {
                let mask = bundle.iter().fold(0usize, |m, &o| m | 1 << o);
                tables[agent][mask].clone()
            }
        })
    }

    /// Classifies `item` for `agent`. Additive profiles use the singleton
    /// value; table profiles use the marginal `u(B) - u(B \ {item})` inside
    /// `context`, which must then contain the item.
    pub fn classify_item(&self, agent: usize, item: usize, context: &ItemSet) -> Result<ItemClass> {
        self.check_agent(agent)?;
        self.check_item(item)?;
        match &self.profile {
            UtilityProfile::Additive(rows) => Ok(ItemClass::from_sign(rows[agent][item].signum())),
            UtilityProfile::Table(_) => {
                if !context.contains(&item) {
                    return Err(Error::MarginalUndefined { item });
                }
                let mut without = context.clone();
                without.remove(&item);
                let marginal =
                    self.bundle_utility(agent, context)? - self.bundle_utility(agent, &without)?;
                Ok(ItemClass::from_sign(marginal.signum()))
            }
        }
    }

    /// Splits `bundle` into its goods and chores for `agent`; neutral items
    /// land in neither set.
    pub fn split_bundle(&self, agent: usize, bundle: &ItemSet) -> Result<(ItemSet, ItemSet)> {
        let mut goods = ItemSet::new();
        let mut chores = ItemSet::new();
        for &item in bundle {
            match self.classify_item(agent, item, bundle)? {
                ItemClass::Good => {
                    goods.insert(item);
                }
                ItemClass::Chore => {
                    chores.insert(item);
                }
                ItemClass::Neutral => {}
            }
        }
        Ok((goods, chores))
    }

    pub fn goods_of(&self, agent: usize, bundle: &ItemSet) -> Result<ItemSet> {
        Ok(self.split_bundle(agent, bundle)?.0)
    }

    pub fn chores_of(&self, agent: usize, bundle: &ItemSet) -> Result<ItemSet> {
        Ok(self.split_bundle(agent, bundle)?.1)
    }

    /// True for additive profiles where every agent has the same row.
    pub fn is_identical(&self) -> bool {
        match &self.profile {
            UtilityProfile::Additive(rows) => rows.windows(2).all(|w| w[0] == w[1]),
            UtilityProfile::Table(_) => false,
        }
    }

    /// True when every singleton value lies in {0, 1}.
    pub fn is_binary(&self) -> bool {
        match &self.profile {
            UtilityProfile::Additive(rows) => rows.iter().flatten().all(|v| v.is_zero() || *v == 1),
            UtilityProfile::Table(_) => false,
        }
    }

    /// Decomposes an additive profile into per-agent magnitudes and signs.
    /// Agents whose row is all zero get `alpha = 1`.
    pub fn ternary_view(&self) -> Result<TernarySymmetricView> {
        let rows = self
            .additive_rows()
            .ok_or_else(|| Error::NotTernary("profile is not additive".into()))?;
        let mut alpha = Vec::with_capacity(rows.len());
        let mut signs = Vec::with_capacity(rows.len());
        for (agent, row) in rows.iter().enumerate() {
            let mut magnitude: Option<Rational> = None;
            for (item, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                match &magnitude {
                    None => magnitude = Some(abs),
                    Some(m) if *m == abs => {}
                    Some(m) => {
                        return Err(Error::NotTernary(format!(
                            "agent {agent} has magnitudes {m} and {abs} (item {item})"
                        )))
                    }
                }
            }
            alpha.push(magnitude.unwrap_or_else(Rational::one));
            signs.push(row.iter().map(Rational::signum).collect());
        }
        Ok(TernarySymmetricView { alpha, signs })
    }

    pub fn is_ternary_symmetric(&self) -> bool {
        self.ternary_view().is_ok()
    }

    /// Rescales every agent of a ternary symmetric profile to `alpha = 1`.
    pub fn normalize_ternary(&self) -> Result<Instance> {
        let view = self.ternary_view()?;
        Instance::additive(
            view.signs
                .iter()
                .map(|row| row.iter().map(|&s| Rational::from(i64::from(s))).collect())
                .collect(),
        )
    }
}

/// Bitmask for an item set, checking every item is below `items`.
pub(crate) fn mask_of(set: &ItemSet, items: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &o in set {
        if o >= items {
            return Err(Error::ItemOutOfRange { item: o, items });
        }
        if o >= 64 {
            return Err(Error::InvalidArgument(format!(
                "item {o} does not fit a 64-bit mask"
            )));
        }
        mask |= 1 << o;
    }
    Ok(mask)
}

pub(crate) fn items_of_mask(mask: u64) -> ItemSet {
    iter_mask(mask).collect()
}

pub(crate) fn iter_mask(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let o = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(o)
        }
    })
}
