//! Runs every checker and confirms the known implications between concepts.

use std::collections::BTreeMap;

use super::{check, FairnessConcept, GroupOptions};
use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;

use FairnessConcept::*;

/// `(premise, conclusion)`: every allocation satisfying the premise
/// satisfies the conclusion.
pub const TAXONOMY_EDGES: [(FairnessConcept, FairnessConcept); 25] = [
    (Sgef, Po),
    (Sgef, Gp),
    (Sgef, Prop),
    (Sgef, Ef),
    (Sgef, Gef),
    (Sgef, Sgefx),
    (Gp, Po),
    (Gp, Gpx),
    (Gp, Prop),
    (Gpx, Gp1),
    (Ef, Efx),
    (Efx, Ef1),
    (Sgefx, Sgef1),
    (Sgefx, Gpx),
    (Sgefx, Efx),
    (Sgefx, Gefx),
    (Sgef1, Gp1),
    (Sgef1, Ef1),
    (Sgef1, Gef1),
    (Gef, Ef),
    (Gef, Gefx),
    (Gef, Po),
    (Gefx, Efx),
    (Gefx, Gef1),
    (Gef1, Ef1),
];

/// Verdict of every concept; fails if some implication is broken, which
/// can only mean a checker bug.
pub fn taxonomy_report(
    instance: &Instance,
    allocation: &Allocation,
    options: GroupOptions,
) -> Result<BTreeMap<FairnessConcept, bool>> {
    let mut verdicts = BTreeMap::new();
    for concept in FairnessConcept::ALL {
        verdicts.insert(
            concept,
            check(instance, allocation, concept, options)?.holds,
        );
    }
    for (premise, conclusion) in TAXONOMY_EDGES {
        if verdicts[&premise] && !verdicts[&conclusion] {
            return Err(Error::TaxonomyViolation {
                premise: premise.to_string(),
                conclusion: conclusion.to_string(),
            });
        }
    }
    Ok(verdicts)
}
