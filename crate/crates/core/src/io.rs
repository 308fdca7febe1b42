//! JSON file formats for instances, allocations, reports and 3-Partition
//! inputs.
//!
//! Rationals are written as strings (`"3"`, `"-1/4"`). An instance file is
//!
//! ```json
//! {"agents": 2, "items": 2, "profile_kind": "additive",
//!  "utilities": [["1", "0"], ["1/2", "-1"]]}
//! ```
//!
//! and table profiles list `{"agent", "subset", "value"}` entries instead of
//! rows. An allocation file holds `bundles` and, for allocations whose scope
//! is not the union of the bundles, `scope`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::fairness::CheckReport;
use crate::hardness::ThreePartitionInstance;
use crate::instance::{items_of_mask, Instance, ItemSet, UtilityProfile};
use crate::rational::Rational;

#[derive(Serialize, Deserialize)]
struct TableEntry {
    agent: usize,
    subset: Vec<usize>,
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    agents: usize,
    items: usize,
    profile_kind: String,
    utilities: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Value>,
}

/// An instance together with the optional free-form `meta` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub meta: Option<Value>,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            instance,
            meta: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let instance = match doc.profile_kind.as_str() {
            "additive" => {
                let rows: Vec<Vec<Rational>> = serde_json::from_value(doc.utilities)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                if rows.len() != doc.agents {
                    return Err(Error::Parse(format!(
                        "{} utility rows for {} agents",
                        rows.len(),
                        doc.agents
                    )));
                }
                if let Some(row) = rows.iter().find(|r| r.len() != doc.items) {
                    return Err(Error::Parse(format!(
                        "utility row of length {} for {} items",
                        row.len(),
                        doc.items
                    )));
                }
                Instance::additive(rows)?
            }
            "table" => {
                let entries: Vec<TableEntry> = serde_json::from_value(doc.utilities)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                Instance::table_from_entries(
                    doc.agents,
                    doc.items,
                    entries
                        .into_iter()
                        .map(|e| (e.agent, e.subset.into_iter().collect(), e.value)),
                )?
            }
            other => return Err(Error::Parse(format!("unknown profile_kind {other:?}"))),
        };
        Ok(InstanceFile {
            instance,
            meta: doc.meta,
        })
    }

    pub fn to_json(&self) -> String {
        let inst = &self.instance;
        let (kind, utilities) = match inst.profile() {
            UtilityProfile::Additive(rows) => ("additive", serde_json::to_value(rows)),
            UtilityProfile::Table(tables) => {
                let entries: Vec<TableEntry> = tables
                    .iter()
                    .enumerate()
                    .flat_map(|(agent, table)| {
                        table
                            .iter()
                            .enumerate()
                            .map(move |(mask, value)| TableEntry {
                                agent,
                                subset: items_of_mask(mask as u64).into_iter().collect(),
                                value: value.clone(),
                            })
                    })
                    .collect();
                ("table", serde_json::to_value(entries))
            }
        };
        let doc = InstanceDoc {
            agents: inst.agents(),
            items: inst.items(),
            profile_kind: kind.into(),
            utilities: utilities.expect("rationals serialize"),
            meta: self.meta.clone(),
        };
        to_pretty(&doc)
    }
}

fn to_pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    Ok(InstanceFile::parse(text)?.instance)
}

pub fn instance_to_json(instance: &Instance) -> String {
    InstanceFile::new(instance.clone()).to_json()
}

#[derive(Serialize, Deserialize)]
struct AllocationDoc {
    bundles: Vec<ItemSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scope: Option<ItemSet>,
}

impl Serialize for Allocation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let union: ItemSet = self.bundles().iter().flatten().copied().collect();
        let scope = (union != *self.scope()).then(|| self.scope().clone());
        AllocationDoc {
            bundles: self.bundles().to_vec(),
            scope,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Allocation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = AllocationDoc::deserialize(deserializer)?;
        Ok(match doc.scope {
            Some(scope) => Allocation::with_scope(doc.bundles, scope),
            None => Allocation::from_bundles(doc.bundles),
        })
    }
}

pub fn parse_allocation(text: &str) -> Result<Allocation> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn allocation_to_json(allocation: &Allocation) -> String {
    to_pretty(allocation)
}

pub fn report_to_json(report: &CheckReport) -> String {
    to_pretty(report)
}

pub fn parse_report(text: &str) -> Result<CheckReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ThreePartitionDoc {
    Bare(Vec<Rational>),
    Wrapped { values: Vec<Rational> },
}

/// Reads `["3/10", ...]` or `{"values": ["3/10", ...]}`.
pub fn parse_three_partition(text: &str) -> Result<ThreePartitionInstance> {
    let doc: ThreePartitionDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let values = match doc {
        ThreePartitionDoc::Bare(v) | ThreePartitionDoc::Wrapped { values: v } => v,
    };
    ThreePartitionInstance::new(values)
}

pub fn three_partition_to_json(x: &ThreePartitionInstance) -> String {
    to_pretty(&serde_json::json!({ "values": x.values() }))
}

/// Parses an allocation and checks its bundle count against `instance`.
pub fn parse_allocation_for(instance: &Instance, text: &str) -> Result<Allocation> {
    let allocation = parse_allocation(text)?;
    if allocation.agents() != instance.agents() {
        return Err(Error::Parse(format!(
            "allocation has {} bundles, instance has {} agents",
            allocation.agents(),
            instance.agents()
        )));
    }
    Ok(allocation)
}
