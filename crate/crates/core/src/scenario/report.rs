//! Check records and the versioned scenario report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "cantor-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub counts: BTreeMap<String, u64>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            counts: BTreeMap::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            status: Status::Fail,
            witness: Some(witness.into()),
            ..Check::pass(name)
        }
    }

    pub fn inconclusive(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            status: Status::Inconclusive,
            witness: Some(reason.into()),
            ..Check::pass(name)
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with its description.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn count(mut self, key: &str, value: impl TryInto<u64>) -> Self {
        self.counts
            .insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Worst status over `checks`: any fail wins, then any inconclusive.
pub fn overall(checks: &[Check]) -> Status {
    checks
        .iter()
        .map(|c| c.status)
        .max()
        .unwrap_or(Status::Pass)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    /// The scenario configuration as parsed.
    pub scenario: serde_json::Value,
    pub status: Status,
    pub checks: Vec<Check>,
    /// SHA-256 of the canonical serialization of the fields above.
    pub digest: String,
    /// Wall-clock timings in milliseconds; excluded from the digest.
    pub timing: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct Hashed<'a> {
    schema: &'a str,
    scenario: &'a serde_json::Value,
    status: Status,
    checks: &'a [Check],
}

impl Report {
    pub fn new(
        scenario: serde_json::Value,
        checks: Vec<Check>,
        timing: BTreeMap<String, u64>,
    ) -> Self {
        let status = overall(&checks);
        let digest = digest_of(SCHEMA, &scenario, status, &checks);
        Report {
            schema: SCHEMA.to_string(),
            scenario,
            status,
            checks,
            digest,
            timing,
        }
    }

    /// Recomputes the digest from the hashed fields.
    pub fn verify_digest(&self) -> bool {
        digest_of(&self.schema, &self.scenario, self.status, &self.checks) == self.digest
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report without its timing section, for byte comparisons.
    pub fn deterministic_json(&self) -> String {
        Report {
            timing: BTreeMap::new(),
            ..self.clone()
        }
        .to_json()
    }

    /// 0 all pass, 1 any fail, 2 inconclusive without failures.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!("{status:<12} {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {:?}  digest: {}\n",
            self.status,
            &self.digest[..16]
        ));
        out
    }
}

fn digest_of(
    schema: &str,
    scenario: &serde_json::Value,
    status: Status,
    checks: &[Check],
) -> String {
    let body = serde_json::to_vec(&Hashed {
        schema,
        scenario,
        status,
        checks,
    })
    .expect("report serializes");
    hex::encode(Sha256::digest(&body))
}
