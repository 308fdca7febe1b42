//! Fairness checkers: envy-based pairwise notions, proportionality, the group
//! notions and Pareto-optimality, with certified witnesses.

mod group;
mod pairwise;
mod taxonomy;
mod validate;

use std::fmt;
use std::str::FromStr;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::{Instance, ItemSet};
use crate::search::SearchBound;
use crate::welfare::pareto_dominator_bruteforce;

pub use group::{is_group_fair, GroupOptions};
pub use pairwise::{is_ef, is_ef1, is_efx, is_prop};
pub use taxonomy::{taxonomy_report, TAXONOMY_EDGES};
pub use validate::{validate_witness, WitnessRejection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FairnessConcept {
    Ef,
    Ef1,
    Efx,
    Prop,
    Gef,
    Gef1,
    Gefx,
    Sgef,
    Sgef1,
    Sgefx,
    Gp,
    Gp1,
    Gpx,
    Po,
}

/// How the group notions pair the envious group `S` with the envied group `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pairing {
    EqualSize,
    AnySize,
    WholeSociety,
}

/// Which single-item removals the group notions allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relaxation {
    None,
    UpToOne,
    UpToAny,
}

impl FairnessConcept {
    pub const ALL: [FairnessConcept; 14] = [
        FairnessConcept::Ef,
        FairnessConcept::Ef1,
        FairnessConcept::Efx,
        FairnessConcept::Prop,
        FairnessConcept::Gef,
        FairnessConcept::Gef1,
        FairnessConcept::Gefx,
        FairnessConcept::Sgef,
        FairnessConcept::Sgef1,
        FairnessConcept::Sgefx,
        FairnessConcept::Gp,
        FairnessConcept::Gp1,
        FairnessConcept::Gpx,
        FairnessConcept::Po,
    ];

    pub const GROUP: [FairnessConcept; 9] = [
        FairnessConcept::Gef,
        FairnessConcept::Gef1,
        FairnessConcept::Gefx,
        FairnessConcept::Sgef,
        FairnessConcept::Sgef1,
        FairnessConcept::Sgefx,
        FairnessConcept::Gp,
        FairnessConcept::Gp1,
        FairnessConcept::Gpx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FairnessConcept::Ef => "EF",
            FairnessConcept::Ef1 => "EF1",
            FairnessConcept::Efx => "EFX",
            FairnessConcept::Prop => "PROP",
            FairnessConcept::Gef => "GEF",
            FairnessConcept::Gef1 => "GEF1",
            FairnessConcept::Gefx => "GEFX",
            FairnessConcept::Sgef => "s-GEF",
            FairnessConcept::Sgef1 => "s-GEF1",
            FairnessConcept::Sgefx => "s-GEFX",
            FairnessConcept::Gp => "GP",
            FairnessConcept::Gp1 => "GP1",
            FairnessConcept::Gpx => "GPX",
            FairnessConcept::Po => "PO",
        }
    }

    pub fn is_group(self) -> bool {
        self.group_shape().is_some()
    }

    pub(crate) fn group_shape(self) -> Option<(Pairing, Relaxation)> {
        use FairnessConcept::*;
        Some(match self {
            Gef => (Pairing::EqualSize, Relaxation::None),
            Gef1 => (Pairing::EqualSize, Relaxation::UpToOne),
            Gefx => (Pairing::EqualSize, Relaxation::UpToAny),
            Sgef => (Pairing::AnySize, Relaxation::None),
            Sgef1 => (Pairing::AnySize, Relaxation::UpToOne),
            Sgefx => (Pairing::AnySize, Relaxation::UpToAny),
            Gp => (Pairing::WholeSociety, Relaxation::None),
            Gp1 => (Pairing::WholeSociety, Relaxation::UpToOne),
            Gpx => (Pairing::WholeSociety, Relaxation::UpToAny),
            Ef | Ef1 | Efx | Prop | Po => return None,
        })
    }
}

impl fmt::Display for FairnessConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FairnessConcept {
    type Err = Error;

    /// Case-insensitive; the `s-` prefix may also be written `s` or `s_`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        FairnessConcept::ALL
            .into_iter()
            .find(|c| c.name().replace('-', "").to_ascii_lowercase() == key)
            .ok_or_else(|| Error::Parse(format!("unknown fairness concept {s:?}")))
    }
}

impl serde::Serialize for FairnessConcept {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for FairnessConcept {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// A certified violation of a group notion: reallocating the items of `T`
/// among `S` as `realloc` dominates even after the listed removals.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupWitness {
    pub concept: FairnessConcept,
    /// Envious group, ascending agent indices.
    pub s: Vec<usize>,
    /// Envied group, ascending agent indices.
    pub t: Vec<usize>,
    /// `realloc[k]` is the new bundle of agent `s[k]`.
    pub realloc: Vec<ItemSet>,
    /// Removal chosen for agent `s[k]`: the worst one for up-to-one
    /// notions, the best one for up-to-any notions, none for plain GEF.
    pub removals: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `envious` envies `envied` in the sense of the checked concept.
    Pair {
        envious: usize,
        envied: usize,
    },
    /// `agent` misses her proportional share.
    Agent {
        agent: usize,
    },
    Group(GroupWitness),
    /// An allocation that Pareto-dominates the checked one.
    Dominated {
        by: Allocation,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SearchStats {
    /// `(S, T)` pairs (or agent pairs) examined.
    pub pairs: u64,
    /// Complete reallocations evaluated.
    pub reallocations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CheckReport {
    pub concept: FairnessConcept,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl CheckReport {
    pub(crate) fn verdict(
        concept: FairnessConcept,
        witness: Option<Witness>,
        stats: SearchStats,
    ) -> Self {
        CheckReport {
            concept,
            holds: witness.is_none(),
            witness,
            stats,
        }
    }

    pub fn group_witness(&self) -> Option<&GroupWitness> {
        match &self.witness {
            Some(Witness::Group(w)) => Some(w),
            _ => None,
        }
    }
}

/// Exhaustive Pareto-optimality as a report.
pub fn is_po(
    instance: &Instance,
    allocation: &Allocation,
    bound: SearchBound,
) -> Result<CheckReport> {
    let by = pareto_dominator_bruteforce(instance, allocation, bound)?;
    let stats = SearchStats {
        pairs: 0,
        reallocations: 0,
    };
    Ok(CheckReport::verdict(
        FairnessConcept::Po,
        by.map(|by| Witness::Dominated { by }),
        stats,
    ))
}

/// Runs the checker for `concept`.
pub fn check(
    instance: &Instance,
    allocation: &Allocation,
    concept: FairnessConcept,
    options: GroupOptions,
) -> Result<CheckReport> {
    match concept {
        FairnessConcept::Ef => is_ef(instance, allocation),
        FairnessConcept::Ef1 => is_ef1(instance, allocation),
        FairnessConcept::Efx => is_efx(instance, allocation),
        FairnessConcept::Prop => is_prop(instance, allocation),
        FairnessConcept::Po => is_po(instance, allocation, options.bound),
        _ => is_group_fair(instance, allocation, concept, options),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concept_names_round_trip() {
        for c in FairnessConcept::ALL {
            assert_eq!(c.name().parse::<FairnessConcept>().unwrap(), c);
        }
        assert_eq!(
            "sgef1".parse::<FairnessConcept>().unwrap(),
            FairnessConcept::Sgef1
        );
        assert_eq!(
            "gef1".parse::<FairnessConcept>().unwrap(),
            FairnessConcept::Gef1
        );
        assert_eq!(
            "S_GEFX".parse::<FairnessConcept>().unwrap(),
            FairnessConcept::Sgefx
        );
        assert!("gef2".parse::<FairnessConcept>().is_err());
    }

    #[test]
    fn group_concepts_have_shapes() {
        for c in FairnessConcept::ALL {
            assert_eq!(c.is_group(), FairnessConcept::GROUP.contains(&c));
        }
    }
}
