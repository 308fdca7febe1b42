//! Integer view of a profile: every value multiplied by one common
//! denominator so inner loops compare plain integers. Scaling by a positive
//! constant preserves every comparison the checkers and oracles make.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::{iter_mask, Instance, UtilityProfile};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone)]
pub(crate) enum Scaled {
    Additive(Vec<Vec<BigInt>>),
    Table(Vec<Vec<BigInt>>),
}

impl Scaled {
    pub(crate) fn new(instance: &Instance) -> Result<Self> {
        if instance.items() > 64 {
            return Err(Error::InvalidArgument(format!(
                "exhaustive routines support at most 64 items, got {}",
                instance.items()
            )));
        }
        let scale = |rows: &[Vec<Rational>]| -> Vec<Vec<BigInt>> {
            let denom = common_denominator(rows.iter().flatten());
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| {
                            v.scaled_integer(&denom)
                                .expect("common denominator divides")
                        })
                        .collect()
                })
                .collect()
        };
        Ok(match instance.profile() {
            UtilityProfile::Additive(rows) => Scaled::Additive(scale(rows)),
            UtilityProfile::Table(tables) => Scaled::Table(scale(tables)),
        })
    }

    pub(crate) fn rows(&self) -> Option<&[Vec<BigInt>]> {
        match self {
            Scaled::Additive(rows) => Some(rows),
            Scaled::Table(_) => None,
        }
    }

    pub(crate) fn value(&self, agent: usize, mask: u64) -> BigInt {
        match self {
            Scaled::Additive(rows) => {
                let mut acc = BigInt::zero();
                for o in iter_mask(mask) {
                    acc += &rows[agent][o];
                }
                acc
            }
            Scaled::Table(tables) => tables[agent][mask as usize].clone(),
        }
    }

    /// `u(mask) - u(mask \ {item})`; `item` must be in `mask` for tables.
    pub(crate) fn marginal(&self, agent: usize, item: usize, mask: u64) -> BigInt {
        match self {
            Scaled::Additive(rows) => rows[agent][item].clone(),
            Scaled::Table(tables) => {
                let t = &tables[agent];
                &t[mask as usize] - &t[(mask & !(1u64 << item)) as usize]
            }
        }
    }

    /// Goods and chores of the bundle `mask`, as masks.
    pub(crate) fn split(&self, agent: usize, mask: u64) -> (u64, u64) {
        let mut goods = 0;
        let mut chores = 0;
        for o in iter_mask(mask) {
            let m = self.marginal(agent, o, mask);
            if m > BigInt::zero() {
                goods |= 1 << o;
            } else if m < BigInt::zero() {
                chores |= 1 << o;
            }
        }
        (goods, chores)
    }
}
