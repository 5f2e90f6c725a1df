//! Per-equation verdicts shared by law suites, diagram validators and derivations.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Pass,
    Fail,
    /// no binding had the required structure
    Skipped,
    /// an as-printed equation that is ill-typed or fails on a valid instance
    SuspectedTypo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// variable name -> rendered value
    pub binding: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
    /// which check (or derivation step) of the entry failed
    pub at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawEntry {
    pub suite: String,
    pub label: String,
    pub anchor: String,
    pub status: LawStatus,
    pub checked: u64,
    /// bindings skipped because a required object or morphism is absent
    pub unavailable: u64,
    /// bindings where a composite did not typecheck
    pub ill_typed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl LawEntry {
    pub fn new(suite: &str, label: &str, anchor: &str) -> Self {
        LawEntry {
            suite: suite.to_string(),
            label: label.to_string(),
            anchor: anchor.to_string(),
            status: LawStatus::Skipped,
            checked: 0,
            unavailable: 0,
            ill_typed: 0,
            note: None,
            counterexample: None,
        }
    }

    /// Records one checked instance; the first failure is kept.
    pub fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(cx());
        }
    }

    /// Status from the counts: pass when something was checked and nothing failed.
    pub fn settle(&mut self) {
        self.status = if self.counterexample.is_some() {
            LawStatus::Fail
        } else if self.checked == 0 {
            LawStatus::Skipped
        } else {
            LawStatus::Pass
        };
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    pub fn new(suite: &str) -> Self {
        LawReport { suite: suite.to_string(), entries: Vec::new() }
    }

    pub fn entry(&self, label: &str) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawEntry> {
        self.entries.iter().filter(|e| e.status == LawStatus::Fail)
    }

    /// No entry failed outright.
    pub fn no_failures(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Every entry passed.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == LawStatus::Pass)
    }

    pub fn merge(&mut self, other: LawReport) {
        self.entries.extend(other.entries);
    }
}

/// Serializes a map with non-string keys as a list of `[key, value]` pairs.
pub fn as_pairs<K: Serialize, V: Serialize, S: Serializer>(map: &BTreeMap<K, V>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(map.iter())
}
