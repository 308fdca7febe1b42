//! Human-readable output. Agents and items are shown 1-based as `a1`, `o1`.

use std::fmt::Write;

use serde_json::json;

use gefkit::algorithms::TraceEvent;
use gefkit::{Allocation, CheckReport, ItemSet, Witness};

fn agent(i: usize) -> String {
    format!("a{}", i + 1)
}

fn items(set: &ItemSet) -> String {
    let names: Vec<String> = set.iter().map(|o| format!("o{}", o + 1)).collect();
    format!("{{{}}}", names.join(", "))
}

fn agents(list: &[usize]) -> String {
    let names: Vec<String> = list.iter().map(|&i| agent(i)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn allocation(alloc: &Allocation) -> String {
    let mut out = String::new();
    for (i, bundle) in alloc.bundles().iter().enumerate() {
        writeln!(out, "{}: {}", agent(i), items(bundle)).unwrap();
    }
    out
}

pub fn report(report: &CheckReport) -> String {
    let mut out = String::new();
    let verdict = if report.holds { "holds" } else { "violated" };
    writeln!(out, "{}: {verdict}", report.concept.name()).unwrap();
    match &report.witness {
        None => {}
        Some(Witness::Pair { envious, envied }) => {
            writeln!(out, "  {} envies {}", agent(*envious), agent(*envied)).unwrap();
        }
        Some(Witness::Agent { agent: a }) => {
            writeln!(out, "  {} is below the proportional share", agent(*a)).unwrap();
        }
        Some(Witness::Group(w)) => {
            writeln!(out, "  S = {}", agents(&w.s)).unwrap();
            writeln!(out, "  T = {}", agents(&w.t)).unwrap();
            for ((a, bundle), removal) in w.s.iter().zip(&w.realloc).zip(&w.removals) {
                write!(out, "  {} receives {}", agent(*a), items(bundle)).unwrap();
                if let Some(o) = removal {
                    write!(out, ", removing o{}", o + 1).unwrap();
                }
                out.push('\n');
            }
        }
        Some(Witness::Dominated { by }) => {
            writeln!(out, "  dominated by").unwrap();
            for line in allocation(by).lines() {
                writeln!(out, "    {line}").unwrap();
            }
        }
    }
    writeln!(
        out,
        "  searched {} pairs, {} reallocations",
        report.stats.pairs, report.stats.reallocations
    )
    .unwrap();
    out
}

/// One JSON line per event.
pub fn trace_event(event: &TraceEvent) -> String {
    match event {
        TraceEvent::Assign {
            item,
            agent,
            partial,
        } => json!({ "event": "assign", "item": item, "agent": agent, "partial": partial })
            .to_string(),
        TraceEvent::Augment { path, amount, cost } => {
            json!({ "event": "augment", "path": path, "amount": amount, "cost": cost.to_string() })
                .to_string()
        }
    }
}
