//! Check reports (pass/fail item lists) and the JSON verification report.

use serde::Serialize;
use std::collections::BTreeMap;

/// A list of named exact checks with an optional detail message per failure.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.push(name, passed, "");
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.passed).collect()
    }

    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for mut item in other.items {
            item.name = format!("{prefix}.{}", item.name);
            self.items.push(item);
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for item in &self.items {
            let mark = if item.passed { "ok " } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", item.name)?;
            } else {
                writeln!(f, "  [{mark}] {} ({})", item.name, item.detail)?;
            }
        }
        Ok(())
    }
}

/// The per-construction verification report. Field order is the JSON key
/// order; params use a BTreeMap so serialization is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub construction: String,
    pub params: BTreeMap<String, String>,
    pub axioms_ok: bool,
    pub regular: bool,
    pub normal: bool,
    pub torsion_free: bool,
    pub flat: bool,
    pub curvature_matches_paper: Option<bool>,
    pub curvature_convention: String,
    pub aut_dim: Option<usize>,
    pub expected_aut_dim: Option<usize>,
    pub notes: Vec<String>,
}

impl Report {
    /// True when every expected outcome required of a catalog entry holds.
    pub fn meets_expectations(&self) -> bool {
        self.axioms_ok
            && self.regular
            && self.normal
            && self.torsion_free
            && self.curvature_matches_paper != Some(false)
            && match (self.aut_dim, self.expected_aut_dim) {
                (Some(a), Some(e)) => a == e,
                _ => true,
            }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}
