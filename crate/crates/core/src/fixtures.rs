//! Small hand-built instances with known fairness behaviour, shared by the
//! test suites and the CLI documentation.

use crate::allocation::Allocation;
use crate::instance::Instance;
use crate::rational::Rational;

/// Four agents with single-peaked ternary utilities over eight items.
///
/// The matching allocation from [`single_peaked_allocation`] is envy-free
/// and Pareto-optimal but not GEF1.
pub fn single_peaked_four_agents() -> Instance {
    Instance::additive_from_ints(&[
        &[-1, -1, 1, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, -1, -1],
        &[1, 1, 1, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, 1, 1],
    ])
    .expect("well-formed fixture")
}

/// Agents 3 and 4 hold their four favourite items; agents 1 and 2 hold nothing.
pub fn single_peaked_allocation() -> Allocation {
    Allocation::from_slices(&[&[], &[], &[0, 1, 2, 3], &[4, 5, 6, 7]])
}

/// Three agents, three goods: two worth 1 to everyone and one worth `epsilon`.
pub fn three_agents_epsilon(epsilon: Rational) -> Instance {
    let row = vec![Rational::one(), Rational::one(), epsilon];
    Instance::additive(vec![row.clone(), row.clone(), row]).expect("well-formed fixture")
}

/// Each agent holds one item; agent 3 holds the `epsilon` item.
pub fn three_agents_epsilon_allocation() -> Allocation {
    Allocation::from_slices(&[&[0], &[1], &[2]])
}

/// Two agents whose utility depends only on how many of the four items
/// they hold; the second agent values nothing below three items.
pub fn cardinality_monotone() -> Instance {
    const FIRST: [i64; 5] = [0, 1, 4, 6, 10];
    const SECOND: [i64; 5] = [0, 0, 0, 6, 10];
    let table = |by_size: [i64; 5]| -> Vec<Rational> {
        (0u32..16)
            .map(|mask| Rational::from(by_size[mask.count_ones() as usize]))
            .collect()
    };
    Instance::table(2, 4, vec![table(FIRST), table(SECOND)]).expect("well-formed fixture")
}
