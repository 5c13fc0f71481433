//! Verification reports: every identity check in the crate produces one of
//! these rather than panicking, so the CLI can aggregate suites and keep
//! expected discrepancies (transcription errors in printed formulas) apart
//! from genuine failures.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyStatus {
    Verified,
    Failed,
    /// The printed form of a source formula is known not to hold; the check
    /// records the mismatch without failing the run.
    DiscrepancyExpected,
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyStatus::Verified => write!(f, "verified"),
            VerifyStatus::Failed => write!(f, "FAILED"),
            VerifyStatus::DiscrepancyExpected => write!(f, "paper-discrepancy"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub params: String,
    pub status: VerifyStatus,
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn verified(id: &str, params: impl Into<String>) -> Self {
        VerificationReport {
            id: id.to_string(),
            params: params.into(),
            status: VerifyStatus::Verified,
            witness: None,
        }
    }

    pub fn failed(id: &str, params: impl Into<String>, witness: impl Into<String>) -> Self {
        VerificationReport {
            id: id.to_string(),
            params: params.into(),
            status: VerifyStatus::Failed,
            witness: Some(witness.into()),
        }
    }

    pub fn discrepancy(id: &str, params: impl Into<String>, witness: impl Into<String>) -> Self {
        VerificationReport {
            id: id.to_string(),
            params: params.into(),
            status: VerifyStatus::DiscrepancyExpected,
            witness: Some(witness.into()),
        }
    }

    /// Verified when `ok`, failed with the witness otherwise.
    pub fn check(id: &str, params: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            VerificationReport::verified(id, params)
        } else {
            VerificationReport::failed(id, params, witness())
        }
    }

    pub fn is_failure(&self) -> bool {
        self.status == VerifyStatus::Failed
    }

    pub fn render(&self) -> String {
        match &self.witness {
            Some(w) => format!("[{}] {} ({}) :: {}", self.status, self.id, self.params, w),
            None => format!("[{}] {} ({})", self.status, self.id, self.params),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "params": self.params,
            "status": self.status.to_string(),
            "witness": self.witness,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
