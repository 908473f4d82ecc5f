//! Reproduction report for the record table: build each compound, certify
//! it, and compare against the published order and parameters.
//!
//! Fast scope covers the four constructions that certify exhaustively in
//! seconds; full scope adds the large hexagon compounds (minutes to tens of
//! minutes of BFS work — the nightly tier) and the flagged H13K7 entry whose
//! published order disagrees with the replacement arithmetic by 1000.

use crate::compound::{
    build_h3_k3, build_h4_k4, build_named_uncertified, build_q4_k3, construct_named,
    CompoundConfig, CompoundError, CompoundResult, NamedCompound,
};
use crate::graph::Certificate;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Fast,
    Full,
}

impl Scope {
    pub fn parse_name(name: &str) -> Option<Scope> {
        match name.to_ascii_lowercase().as_str() {
            "fast" => Some(Scope::Fast),
            "full" => Some(Scope::Full),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Match,
    Mismatch,
    Skipped,
    Flagged,
}

/// One row of the reproduction report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub delta: u32,
    pub diameter: u32,
    pub expected_order: u64,
    pub computed_order: Option<u64>,
    pub certificate: Option<Certificate>,
    pub status: EntryStatus,
    pub note: String,
}

impl TableEntry {
    fn from_result(
        name: &str,
        delta: u32,
        diameter: u32,
        expected_order: u64,
        result: Result<CompoundResult, CompoundError>,
    ) -> TableEntry {
        match result {
            Ok(res) => {
                let order = res.graph.order() as u64;
                let cert = res.certificate.clone();
                let ok = order == expected_order
                    && cert.max_degree == delta
                    && cert.diameter == diameter;
                TableEntry {
                    name: name.to_string(),
                    delta,
                    diameter,
                    expected_order,
                    computed_order: Some(order),
                    certificate: Some(cert),
                    status: if ok {
                        EntryStatus::Match
                    } else {
                        EntryStatus::Mismatch
                    },
                    note: if ok {
                        format!("seed {}", res.plan.seed)
                    } else {
                        "computed order or certificate disagrees".to_string()
                    },
                }
            }
            Err(e) => TableEntry {
                name: name.to_string(),
                delta,
                diameter,
                expected_order,
                computed_order: None,
                certificate: None,
                status: EntryStatus::Mismatch,
                note: e.to_string(),
            },
        }
    }
}

/// Builds the report. Rows appear in ascending degree order; every row is
/// constructed and certified on the spot (or loaded through the cache
/// configured in `config`).
pub fn run_table(scope: Scope, config: &CompoundConfig) -> Vec<TableEntry> {
    let mut rows = vec![
        TableEntry::from_result("Q4(K3)", 5, 4, 186, build_q4_k3(config)),
        TableEntry::from_result("H3(K3)", 4, 6, 740, build_h3_k3(config)),
        TableEntry::from_result("H4(K4)", 5, 6, 2754, build_h4_k4(config)),
        TableEntry::from_result(
            "H5(K4)",
            6,
            6,
            7860,
            construct_named(NamedCompound::H5K4, config),
        ),
    ];
    if scope == Scope::Full {
        for id in [
            NamedCompound::H7K6,
            NamedCompound::H8K6,
            NamedCompound::H9K6,
            NamedCompound::H11K6,
        ] {
            rows.push(TableEntry::from_result(
                &format!("H{}(K6)", id.params().0),
                id.delta(),
                6,
                id.published_order(),
                construct_named(id, config),
            ));
        }
        rows.push(h13_flagged_row(config));
    }
    rows
}

/// H13K7 never produces a match/mismatch verdict: the replacement arithmetic
/// gives 807 636 vertices while the published table prints 806 636. The row
/// reports the constructed order and flags the discrepancy; diameter
/// certification is best-effort and not attempted here.
fn h13_flagged_row(config: &CompoundConfig) -> TableEntry {
    let id = NamedCompound::H13K7;
    let note_base = format!(
        "published order {} vs replacement arithmetic {}",
        id.published_order(),
        id.derived_order()
    );
    match build_named_uncertified(id, config) {
        Ok((graph, _plan, report)) => {
            let stats = graph.degree_stats();
            TableEntry {
                name: "H13(K7)".to_string(),
                delta: id.delta(),
                diameter: 6,
                expected_order: id.published_order(),
                computed_order: Some(graph.order() as u64),
                certificate: None,
                status: EntryStatus::Flagged,
                note: format!(
                    "{note_base}; built order {} at max degree {}; conditions {}",
                    graph.order(),
                    stats.max,
                    if report.all_pass() { "pass" } else { "FAIL" }
                ),
            }
        }
        Err(e) => TableEntry {
            name: "H13(K7)".to_string(),
            delta: id.delta(),
            diameter: 6,
            expected_order: id.published_order(),
            computed_order: None,
            certificate: None,
            status: EntryStatus::Flagged,
            note: format!("{note_base}; construction failed: {e}"),
        },
    }
}

/// True when some non-flagged row failed; drives the CLI exit code.
pub fn any_failure(rows: &[TableEntry]) -> bool {
    rows.iter()
        .any(|r| r.status == EntryStatus::Mismatch)
}

pub fn render(rows: &[TableEntry]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8} {:>3} {:>2} {:>10} {:>10} {:>9}  note\n",
        "name", "deg", "D", "expected", "computed", "status"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<8} {:>3} {:>2} {:>10} {:>10} {:>9}  {}\n",
            r.name,
            r.delta,
            r.diameter,
            r.expected_order,
            r.computed_order
                .map(|o| o.to_string())
                .unwrap_or_else(|| "-".to_string()),
            format!("{:?}", r.status).to_lowercase(),
            r.note
        ));
    }
    out
}
