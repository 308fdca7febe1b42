//! Exact checkers, solvers and hardness generators for group fairness in
//! the allocation of indivisible goods and chores.
//!
//! All utilities are exact rationals. Agents and items are 0-based indices.

pub mod algorithms;
pub mod allocation;
pub mod error;
pub mod fairness;
pub mod fixtures;
pub mod generate;
pub mod hardness;
pub mod instance;
pub mod io;
pub mod rational;
pub mod search;
mod valuation;
pub mod welfare;

pub use allocation::{validate_allocation, Allocation, AllocationViolation};
pub use error::{Error, Result};
pub use fairness::{
    check, is_group_fair, taxonomy_report, validate_witness, CheckReport, FairnessConcept,
    GroupOptions, GroupWitness, Witness,
};
pub use instance::{Instance, ItemClass, ItemSet, TernarySymmetricView, UtilityProfile};
pub use rational::{rat, Rational};
pub use search::SearchBound;
