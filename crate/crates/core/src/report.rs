//! Scan reports and their text and JSON renderings.
//!
//! The JSON form is a compact object with keys in this order: `version`,
//! `file`, optional `scanned_at`, `total`, `counts`, `occurrences`,
//! `diagnostics`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use crate::diagnostic::Diagnostic;
use crate::rules::{RuleConfig, RuleId, SmellOccurrence};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub version: String,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scanned_at: Option<String>,
    pub total: usize,
    /// One entry per enabled rule, in rule order.
    pub counts: BTreeMap<RuleId, usize>,
    pub occurrences: Vec<SmellOccurrence>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ScanReport {
    /// `occurrences` should already be in `run_all` order.
    pub fn build(
        file: &str,
        occurrences: Vec<SmellOccurrence>,
        diagnostics: Vec<Diagnostic>,
        config: &RuleConfig,
    ) -> Self {
        let mut counts: BTreeMap<RuleId, usize> = config.enabled.iter().map(|r| (*r, 0)).collect();
        for o in &occurrences {
            *counts.entry(o.rule).or_default() += 1;
        }
        let occurrences = occurrences
            .into_iter()
            .map(|o| SmellOccurrence {
                graph_subject: None,
                ..o
            })
            .collect::<Vec<_>>();
        ScanReport {
            version: TOOL_VERSION.to_string(),
            file: file.to_string(),
            scanned_at: None,
            total: occurrences.len(),
            counts,
            occurrences,
            diagnostics,
        }
    }

    pub fn with_timestamp(mut self, at: OffsetDateTime) -> Self {
        self.scanned_at = Some(at.format(&Rfc3339).expect("RFC 3339 timestamp"));
        self
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One `file:line: [rule] message` line per occurrence and a summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.occurrences {
            match &o.location {
                Some(loc) => write!(out, "{}:{}: ", loc.file, loc.line),
                None => write!(out, "{}: ", self.file),
            }
            .unwrap();
            writeln!(out, "[{}] {}", o.rule, o.message).unwrap();
        }
        let noun = if self.total == 1 { "smell" } else { "smells" };
        write!(out, "{}: {} {noun}", self.file, self.total).unwrap();
        let hits: Vec<String> = self
            .counts
            .iter()
            .filter(|(_, n)| **n > 0)
            .map(|(r, n)| format!("{r} {n}"))
            .collect();
        if !hits.is_empty() {
            write!(out, " ({})", hits.join(", ")).unwrap();
        }
        out.push('\n');
        out
    }
}

#[derive(Serialize)]
struct RuleEntry {
    id: RuleId,
    description: &'static str,
}

/// `[{"id": ..., "description": ...}, ...]` in rule order.
pub fn render_rules_json() -> String {
    let entries: Vec<RuleEntry> = RuleId::ALL
        .into_iter()
        .map(|id| RuleEntry {
            id,
            description: id.description(),
        })
        .collect();
    serde_json::to_string(&entries).expect("rule listing serializes")
}

/// One `id  description` row per rule.
pub fn render_rules_text() -> String {
    let width = RuleId::ALL.iter().map(|r| r.id().len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in RuleId::ALL {
        writeln!(out, "{:width$}  {}", r.id(), r.description()).unwrap();
    }
    out
}
