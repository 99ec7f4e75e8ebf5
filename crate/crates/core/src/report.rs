use serde::Serialize;

use crate::ring::LaurentPoly;

/// One verified identity: `{"check","n","k","pass","lhs","rhs"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub n: i64,
    pub k: i64,
    pub pass: bool,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl CheckEntry {
    /// An equality check; passes iff `lhs == rhs`.
    pub fn equality(check: &str, n: i64, k: i64, lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        CheckEntry {
            check: check.to_string(),
            n,
            k,
            pass: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Ordered list of check entries. Serializes as a bare JSON array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
