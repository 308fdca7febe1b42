//! 3-Partition and its reductions to testing GEF1, with goods only and
//! with chores only. In both reductions the allocation violates GEF1 exactly
//! when the 3-Partition instance has a solution.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::fairness::{is_group_fair, CheckReport, FairnessConcept, GroupOptions};
use crate::instance::Instance;
use crate::rational::{common_denominator, Rational};

/// Largest `m` the exhaustive 3-Partition solver accepts.
pub const MAX_BRUTEFORCE_M: usize = 4;

/// `3m` numbers strictly between 1/4 and 1/2 summing to `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    values: Vec<Rational>,
}

impl ThreePartitionInstance {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(3) {
            return Err(Error::InvalidThreePartition(format!(
                "expected a positive multiple of 3 numbers, got {}",
                values.len()
            )));
        }
        let quarter = Rational::new(1, 4)?;
        let half = Rational::new(1, 2)?;
        if let Some(x) = values.iter().find(|x| **x <= quarter || **x >= half) {
            return Err(Error::InvalidThreePartition(format!(
                "{x} is not strictly between 1/4 and 1/2"
            )));
        }
        let m = values.len() / 3;
        let total: Rational = values.iter().sum();
        if total != m as i64 {
            return Err(Error::InvalidThreePartition(format!(
                "numbers sum to {total}, expected {m}"
            )));
        }
        Ok(ThreePartitionInstance { values })
    }

    pub fn from_fractions(values: &[(i64, i64)]) -> Result<Self> {
        let values = values
            .iter()
            .map(|&(p, q)| Rational::new(p, q))
            .collect::<Result<Vec<_>>>()?;
        ThreePartitionInstance::new(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn m(&self) -> usize {
        self.values.len() / 3
    }

    /// Same multiset, sorted decreasingly.
    pub fn sorted_decreasing(&self) -> ThreePartitionInstance {
        let mut values = self.values.clone();
        values.sort_by(|a, b| b.cmp(a));
        ThreePartitionInstance { values }
    }
}

/// Unit-sum triples (indices into `values()`) covering every number, or
/// `None` if none exist.
pub fn solve_3partition_bruteforce(x: &ThreePartitionInstance) -> Result<Option<Vec<[usize; 3]>>> {
    if x.m() > MAX_BRUTEFORCE_M {
        return Err(Error::BoundExceeded {
            what: "3-Partition enumeration".into(),
            size: format!("m = {}", x.m()),
            bound: MAX_BRUTEFORCE_M as u128,
        });
    }
    let mut used = vec![false; x.values.len()];
    let mut triples = Vec::with_capacity(x.m());
    Ok(place(&x.values, &mut used, &mut triples).then_some(triples))
}

fn place(values: &[Rational], used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    // the first free number must belong to some triple
    let Some(first) = used.iter().position(|u| !u) else {
        return true;
    };
    used[first] = true;
    let one = Rational::one();
    for second in first + 1..values.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        for third in second + 1..values.len() {
            if used[third] || &values[first] + &values[second] + &values[third] != one {
                continue;
            }
            used[third] = true;
            triples.push([first, second, third]);
            if place(values, used, triples) {
                return true;
            }
            triples.pop();
            used[third] = false;
        }
        used[second] = false;
    }
    used[first] = false;
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionVariant {
    Goods,
    Chores,
}

impl ReductionVariant {
    pub fn name(self) -> &'static str {
        match self {
            ReductionVariant::Goods => "goods",
            ReductionVariant::Chores => "chores",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub allocation: Allocation,
    pub epsilon: Rational,
    /// Penalty for unwanted chores; unused by the goods variant.
    pub big_m: Option<Rational>,
    pub variant: ReductionVariant,
    /// The input numbers, sorted decreasingly as used in the tables.
    pub source: ThreePartitionInstance,
}

impl ReductionOutput {
    /// Provenance record stored alongside generated instance files.
    pub fn meta(&self) -> serde_json::Value {
        json!({
            "generator": "3-partition reduction",
            "variant": self.variant.name(),
            "x": self.source.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "epsilon": self.epsilon.to_string(),
            "big_m": self.big_m.as_ref().map(ToString::to_string),
        })
    }
}

/// Half the finest grid the numbers live on: any sum of them that is not 1
/// misses 1 by at least twice this.
fn epsilon_for(x: &ThreePartitionInstance) -> Rational {
    let lcm = common_denominator(x.values());
    Rational::one() / Rational::from_integer(lcm * 2)
}

/// Goods-only reduction; needs `m >= 2`.
///
/// Agents `a_1..a_m` then `b`. Items `g_1..g_m`, then `h(i, j)` for `i != j`
/// grouped by `i`, then `l_1..l_3m`, then two bonus items for `b`.
pub fn reduce_to_isgef1_goods(x: &ThreePartitionInstance) -> Result<ReductionOutput> {
    let m = x.m();
    if m < 2 {
        return Err(Error::InvalidThreePartition(
            "the goods reduction needs m >= 2".into(),
        ));
    }
    let source = x.sorted_decreasing();
    let xs = source.values();
    let epsilon = epsilon_for(&source);
    let mi = Rational::from(m as i64);
    let g = |i: usize| i;
    let h = |i: usize, j: usize| m + i * (m - 1) + if j < i { j } else { j - 1 };
    let l = |k: usize| m + m * (m - 1) + k;
    let bonus = m + m * (m - 1) + 3 * m;
    let items = bonus + 2;

    let mut rows = vec![vec![Rational::zero(); items]; m + 1];
    let share = &mi / &Rational::from((m - 1) as i64);
    for i in 0..m {
        rows[i][g(i)] = &(&mi + &Rational::one()) - &epsilon;
        for j in (0..m).filter(|&j| j != i) {
            rows[i][h(i, j)] = share.clone();
        }
        for k in 0..3 * m {
            rows[i][l(k)] = xs[k].clone();
        }
    }
    for k in 0..3 * m {
        rows[m][l(k)] = xs[k].clone();
    }
    rows[m][bonus] = mi.clone();
    rows[m][bonus + 1] = mi;

    let mut owners = vec![0usize; items];
    for i in 0..m {
        owners[g(i)] = i;
        for j in (0..m).filter(|&j| j != i) {
            owners[h(j, i)] = i;
        }
    }
    for k in 0..3 * m {
        owners[l(k)] = m;
    }
    owners[bonus] = 0;
    owners[bonus + 1] = m - 1;

    Ok(ReductionOutput {
        instance: Instance::additive(rows)?,
        allocation: Allocation::from_owners(m + 1, &owners),
        epsilon,
        big_m: None,
        variant: ReductionVariant::Goods,
        source,
    })
}

/// Chores-only reduction.
///
/// Agents `a_1..a_m` then `b_1..b_m`. Items `g_1..g_m`, `h_1..h_m`,
/// `l_1..l_3m`, `o_1..o_2m`.
pub fn reduce_to_isgef1_chores(x: &ThreePartitionInstance) -> Result<ReductionOutput> {
    let m = x.m();
    let source = x.sorted_decreasing();
    let xs = source.values();
    let epsilon = epsilon_for(&source);
    let big_m = Rational::from(m as i64 + 2);
    let mi = Rational::from(m as i64);
    let g = |i: usize| i;
    let h = |i: usize| m + i;
    let l = |k: usize| 2 * m + k;
    let o = |k: usize| 5 * m + k;
    let items = 7 * m;

    let mut rows = vec![vec![-big_m.clone(); items]; 2 * m];
    for i in 0..m {
        let row = &mut rows[i];
        row[h((i + m - 1) % m)] = Rational::zero();
        row[g(i)] = -(&mi + &epsilon);
        row[h(i)] = -(Rational::one() + &epsilon);
        for k in 0..3 * m {
            row[l(k)] = -xs[k].clone();
        }
        row[o(i)] = Rational::zero();

        let row = &mut rows[m + i];
        row[g(i)] = -(&xs[3 * i + 1] + &xs[3 * i + 2]);
        for k in 3 * i..3 * i + 3 {
            row[l(k)] = -xs[k].clone();
        }
        row[o(m + i)] = Rational::zero();
    }

    let mut owners = vec![0usize; items];
    for i in 0..m {
        owners[g(i)] = i;
        owners[h(i)] = i;
        owners[o(i)] = i;
        for k in 3 * i..3 * i + 3 {
            owners[l(k)] = m + i;
        }
        owners[o(m + i)] = m + i;
    }

    Ok(ReductionOutput {
        instance: Instance::additive(rows)?,
        allocation: Allocation::from_owners(2 * m, &owners),
        epsilon,
        big_m: Some(big_m),
        variant: ReductionVariant::Chores,
        source,
    })
}

/// Outcome of running the GEF1 checker on a reduction output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub yes_instance: bool,
    pub report: CheckReport,
}

impl Certificate {
    /// GEF1 is violated exactly on yes-instances.
    pub fn agrees(&self) -> bool {
        self.report.holds != self.yes_instance
    }

    /// Whether a found violation uses every agent on both sides.
    pub fn witness_spans_everyone(&self, agents: usize) -> Option<bool> {
        self.report
            .group_witness()
            .map(|w| w.s.len() == agents && w.t.len() == agents)
    }
}

pub fn certify_reduction(
    out: &ReductionOutput,
    yes_instance: bool,
    options: GroupOptions,
) -> Result<Certificate> {
    let report = is_group_fair(
        &out.instance,
        &out.allocation,
        FairnessConcept::Gef1,
        options,
    )?;
    Ok(Certificate {
        yes_instance,
        report,
    })
}

/// Random valid instance on the grid `1/denominator`.
pub fn random_three_partition(
    m: usize,
    denominator: i64,
    rng: &mut impl Rng,
) -> Result<ThreePartitionInstance> {
    // open interval (1/4, 1/2) on the grid
    let low = denominator / 4 + 1;
    let high = (denominator + 1) / 2 - 1;
    if m == 0
        || low > high
        || 3 * low * m as i64 > denominator * m as i64
        || 3 * high * (m as i64) < denominator * m as i64
    {
        return Err(Error::InvalidArgument(format!(
            "no 3-Partition instance with m = {m} on grid 1/{denominator}"
        )));
    }
    loop {
        let mut ticks: Vec<i64> = (0..3 * m - 1).map(|_| rng.gen_range(low..=high)).collect();
        let last = denominator * m as i64 - ticks.iter().sum::<i64>();
        if (low..=high).contains(&last) {
            ticks.push(last);
            let values = ticks
                .iter()
                .map(|&t| Rational::new(t, denominator))
                .collect::<Result<Vec<_>>>()?;
            return ThreePartitionInstance::new(values);
        }
    }
}

/// Random yes-instance built from `m` unit triples.
pub fn random_yes_three_partition(
    m: usize,
    denominator: i64,
    rng: &mut impl Rng,
) -> Result<ThreePartitionInstance> {
    let low = denominator / 4 + 1;
    let high = (denominator + 1) / 2 - 1;
    if m == 0 || low > high {
        return Err(Error::InvalidArgument(format!(
            "no 3-Partition instance on grid 1/{denominator}"
        )));
    }
    let mut ticks = Vec::with_capacity(3 * m);
    while ticks.len() < 3 * m {
        let a = rng.gen_range(low..=high);
        let b = rng.gen_range(low..=high);
        let c = denominator - a - b;
        if (low..=high).contains(&c) {
            ticks.extend([a, b, c]);
        }
    }
    let values = ticks
        .iter()
        .map(|&t| Rational::new(t, denominator))
        .collect::<Result<Vec<_>>>()?;
    ThreePartitionInstance::new(values)
}

/// Deterministic corpus of labelled instances: for each `m`, `per_m` random
/// instances alternating between forced yes-instances and unconstrained
/// draws, each labelled by the exhaustive solver.
pub fn three_partition_corpus(
    seed: u64,
    ms: &[usize],
    per_m: usize,
) -> Result<Vec<(ThreePartitionInstance, bool)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::new();
    for &m in ms {
        for k in 0..per_m {
            let x = if k % 2 == 0 {
                random_yes_three_partition(m, 100, &mut rng)?
            } else {
                random_three_partition(m, 100, &mut rng)?
            };
            let yes = solve_3partition_bruteforce(&x)?.is_some();
            corpus.push((x, yes));
        }
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::validate_allocation;
    use crate::rational::rat;

    fn yes_m2() -> ThreePartitionInstance {
        ThreePartitionInstance::from_fractions(&[
            (26, 100),
            (26, 100),
            (48, 100),
            (3, 10),
            (3, 10),
            (4, 10),
        ])
        .unwrap()
    }

    fn no_m2() -> ThreePartitionInstance {
        ThreePartitionInstance::from_fractions(&[
            (26, 100),
            (26, 100),
            (26, 100),
            (4, 10),
            (4, 10),
            (42, 100),
        ])
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(ThreePartitionInstance::from_fractions(&[(3, 10), (3, 10)]).is_err());
        assert!(ThreePartitionInstance::from_fractions(&[(1, 4), (3, 10), (45, 100)]).is_err());
        assert!(ThreePartitionInstance::from_fractions(&[(3, 10), (3, 10), (3, 10)]).is_err());
        assert!(ThreePartitionInstance::new(vec![]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let yes = solve_3partition_bruteforce(&yes_m2()).unwrap().unwrap();
        assert_eq!(yes, vec![[0, 1, 2], [3, 4, 5]]);
        let single = ThreePartitionInstance::from_fractions(&[(3, 10), (3, 10), (4, 10)]).unwrap();
        assert!(solve_3partition_bruteforce(&single).unwrap().is_some());
        assert!(solve_3partition_bruteforce(&no_m2()).unwrap().is_none());
        // 0.26 + 0.27 + 0.47 = 1, so this one splits too
        let mixed = ThreePartitionInstance::from_fractions(&[
            (26, 100),
            (27, 100),
            (47, 100),
            (3, 10),
            (3, 10),
            (4, 10),
        ])
        .unwrap();
        assert!(solve_3partition_bruteforce(&mixed).unwrap().is_some());
    }

    #[test]
    fn oracle_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let big = random_three_partition(5, 100, &mut rng).unwrap();
        assert!(solve_3partition_bruteforce(&big)
            .unwrap_err()
            .is_bound_exceeded());
    }

    #[test]
    fn goods_reduction_shape() {
        let out = reduce_to_isgef1_goods(&yes_m2()).unwrap();
        assert_eq!(out.instance.agents(), 3);
        assert_eq!(out.instance.items(), 12);
        assert_eq!(validate_allocation(&out.instance, &out.allocation), Ok(()));
        assert_eq!(out.epsilon, rat(1, 100));
        assert_eq!(
            out.instance.singleton(0, 0).unwrap(),
            rat(3, 1) - rat(1, 100)
        );
        assert_eq!(out.instance.singleton(0, 2).unwrap(), rat(2, 1));
        assert_eq!(out.instance.singleton(2, 10).unwrap(), rat(2, 1));
        assert!(reduce_to_isgef1_goods(
            &ThreePartitionInstance::from_fractions(&[(3, 10), (3, 10), (4, 10)]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn chores_reduction_shape() {
        let out = reduce_to_isgef1_chores(&yes_m2()).unwrap();
        assert_eq!(out.instance.agents(), 4);
        assert_eq!(out.instance.items(), 14);
        assert_eq!(validate_allocation(&out.instance, &out.allocation), Ok(()));
        let eps = out.epsilon.clone();
        assert_eq!(out.instance.singleton(0, 2).unwrap(), -(rat(1, 1) + &eps));
        assert_eq!(out.instance.singleton(0, 3).unwrap(), rat(0, 1));
        // sorted: 0.48, 0.4, 0.3, 0.3, 0.26, 0.26; b_1 values g_1 at -(x_2 + x_3)
        assert_eq!(out.instance.singleton(2, 0).unwrap(), -rat(7, 10));
        assert_eq!(out.big_m, Some(rat(4, 1)));
    }

    #[test]
    fn corpus_is_deterministic_and_labelled() {
        let a = three_partition_corpus(11, &[1, 2], 6).unwrap();
        let b = three_partition_corpus(11, &[1, 2], 6).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().filter(|(x, _)| x.m() == 1).all(|(_, yes)| *yes));
        for (x, yes) in &a {
            assert_eq!(solve_3partition_bruteforce(x).unwrap().is_some(), *yes);
        }
    }
}
