use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Data about an open statement; never counts as a failure.
    Evidence,
}

/// Outcome of one check in one degree (or, for the top-form search,
/// one number of generators).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub check: String,
    pub degree: u32,
    pub pass: bool,
    pub dims: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl DegreeResult {
    pub fn new(check: &str, degree: u32) -> Self {
        DegreeResult {
            check: check.to_string(),
            degree,
            pass: true,
            dims: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn dim(mut self, name: &str, value: usize) -> Self {
        self.dims.insert(name.to_string(), value);
        self
    }

    /// Marks the result failed unless `ok`; the first failure's witness is kept.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            if self.pass {
                self.witness = Some(witness());
            }
            self.pass = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub degrees: Vec<DegreeResult>,
}

impl CheckReport {
    pub fn from_results(check: &str, degrees: Vec<DegreeResult>) -> Self {
        let status = if degrees.iter().all(|r| r.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            check: check.to_string(),
            status,
            note: None,
            degrees,
        }
    }

    /// A report on an unproven statement: status is always `evidence`.
    pub fn evidence(check: &str, degrees: Vec<DegreeResult>, note: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            status: Status::Evidence,
            note: Some(note.to_string()),
            degrees,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeResult> {
        self.degrees.iter().filter(|r| !r.pass)
    }
}
