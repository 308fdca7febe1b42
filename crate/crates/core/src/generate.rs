//! Seeded random instances. Every generator draws from ChaCha8 seeded with
//! `seed`, so the same arguments always yield the same instance.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, MAX_TABLE_ITEMS};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// One additive row shared by every agent.
    Identical,
    /// Each agent has a scale `alpha_i > 0` and values items at
    /// `-alpha_i`, `0` or `alpha_i`.
    Ternary,
    /// Independent additive rows.
    Additive,
    /// Independent explicit tables over all subsets.
    Table,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 4] = [
        InstanceKind::Identical,
        InstanceKind::Ternary,
        InstanceKind::Additive,
        InstanceKind::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Identical => "identical",
            InstanceKind::Ternary => "ternary",
            InstanceKind::Additive => "additive",
            InstanceKind::Table => "table",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown instance kind {s:?}")))
    }
}

/// Inclusive integer range values are drawn from. Values are multiples of
/// `1/denominator` for a denominator drawn from `1..=max_denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueRange {
    pub low: i64,
    pub high: i64,
    pub max_denominator: i64,
}

impl ValueRange {
    pub fn new(low: i64, high: i64) -> Result<Self> {
        ValueRange {
            low,
            high,
            max_denominator: 1,
        }
        .validated()
    }

    pub fn with_max_denominator(self, max_denominator: i64) -> Result<Self> {
        ValueRange {
            max_denominator,
            ..self
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        if self.low > self.high {
            return Err(Error::InvalidArgument(format!(
                "empty value range [{}, {}]",
                self.low, self.high
            )));
        }
        if self.max_denominator < 1 {
            return Err(Error::InvalidArgument(
                "denominators must be positive".into(),
            ));
        }
        Ok(self)
    }

    fn draw(&self, rng: &mut impl Rng) -> Rational {
        let d = rng.gen_range(1..=self.max_denominator);
        let k = rng.gen_range(self.low * d..=self.high * d);
        Rational::new(k, d).expect("positive denominator")
    }
}

impl FromStr for ValueRange {
    type Err = Error;

    /// Parses `low:high` or `low:high/denominator`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "value range {s:?} is not of the form low:high[/denominator]"
            ))
        };
        let (bounds, denom) = match s.split_once('/') {
            Some((b, d)) => (b, d.trim().parse().map_err(|_| bad())?),
            None => (s, 1),
        };
        let (low, high) = bounds.split_once(':').ok_or_else(bad)?;
        ValueRange::new(
            low.trim().parse().map_err(|_| bad())?,
            high.trim().parse().map_err(|_| bad())?,
        )?
        .with_max_denominator(denom)
    }
}

pub fn generate_random_instance(
    kind: InstanceKind,
    agents: usize,
    items: usize,
    seed: u64,
    range: ValueRange,
) -> Result<Instance> {
    let range = range.validated()?;
    if agents == 0 {
        return Err(Error::InvalidArgument(
            "at least one agent is required".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        InstanceKind::Identical => {
            let row: Vec<Rational> = (0..items).map(|_| range.draw(&mut rng)).collect();
            Instance::additive(vec![row; agents])
        }
        InstanceKind::Additive => Instance::additive(
            (0..agents)
                .map(|_| (0..items).map(|_| range.draw(&mut rng)).collect())
                .collect(),
        ),
        InstanceKind::Ternary => {
            let scale = range.high.max(-range.low).max(1);
            let signs: Vec<i64> = [-1i64, 0, 1]
                .into_iter()
                .filter(|s| match s {
                    -1 => range.low < 0,
                    1 => range.high > 0,
                    _ => range.low <= 0 && range.high >= 0,
                })
                .collect();
            let rows = (0..agents)
                .map(|_| {
                    let d = rng.gen_range(1..=range.max_denominator);
                    let alpha = Rational::new(rng.gen_range(1..=scale * d), d)
                        .expect("positive denominator");
                    (0..items)
                        .map(|_| {
                            let s = signs[rng.gen_range(0..signs.len())];
                            &alpha * &Rational::from(s)
                        })
                        .collect()
                })
                .collect();
            Instance::additive(rows)
        }
        InstanceKind::Table => {
            if items > MAX_TABLE_ITEMS {
                return Err(Error::InvalidArgument(format!(
                    "table instances support at most {MAX_TABLE_ITEMS} items"
                )));
            }
            let tables = (0..agents)
                .map(|_| {
                    (0..1usize << items)
                        .map(|mask| {
                            if mask == 0 {
                                Rational::zero()
                            } else {
                                range.draw(&mut rng)
                            }
                        })
                        .collect()
                })
                .collect();
            Instance::table(agents, items, tables)
        }
    }
}
