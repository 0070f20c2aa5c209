//! Per-check outcomes shared by every suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::freealg::CertificateSummary;

/// Version of the JSON layout emitted for reports.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(rename = "verdict")]
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    /// Milliseconds; only recorded on request, since it breaks reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            params: BTreeMap::new(),
            status,
            detail: String::new(),
            certificate: None,
            wall_ms: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, Status::Fail).with_detail(detail)
    }

    pub fn from_bool(
        name: impl Into<String>,
        ok: bool,
        detail_if_fail: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail_if_fail())
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn with_certificate(mut self, c: CertificateSummary) -> Self {
        self.certificate = Some(c);
        self
    }

    pub fn with_param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    #[serde(default)]
    pub config: BTreeMap<String, String>,
    #[serde(rename = "verdict")]
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            config: BTreeMap::new(),
            status: Status::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.status = self.status.combine(c.status);
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status != Status::Pass)
    }
}
