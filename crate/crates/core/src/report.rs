//! Check results and the JSON report envelope.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::rational::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub case_id: Option<u32>,
    pub q: Vec<String>,
    pub status: Status,
    pub residual: String,
    pub tolerance: String,
    pub elapsed_ms: u64,
    pub details: String,
}

impl CheckReport {
    pub fn new(id: impl Into<String>) -> Self {
        CheckReport {
            id: id.into(),
            case_id: None,
            q: Vec::new(),
            status: Status::Skip,
            residual: String::new(),
            tolerance: "exact".into(),
            elapsed_ms: 0,
            details: String::new(),
        }
    }

    pub fn case(mut self, id: u32) -> Self {
        self.case_id = Some(id);
        self
    }

    pub fn q(mut self, q: &[Q]) -> Self {
        self.q = q.iter().map(fmt_q).collect();
        self
    }

    pub fn tolerance(mut self, t: impl Into<String>) -> Self {
        self.tolerance = t.into();
        self
    }

    pub fn residual(mut self, r: impl Into<String>) -> Self {
        self.residual = r.into();
        self
    }

    pub fn details(mut self, d: impl Into<String>) -> Self {
        self.details = d.into();
        self
    }

    pub fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    pub fn pass_if(self, ok: bool) -> Self {
        self.status(if ok { Status::Pass } else { Status::Fail })
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckReport>) -> Self {
        Report { schema_version: 1, suite: suite.into(), checks }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(CheckReport::failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        let r: Report = serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))?;
        if r.schema_version != 1 {
            return Err(crate::Error::Parse(format!("unsupported schema_version {}", r.schema_version)));
        }
        Ok(r)
    }

    pub fn summary_line(&self) -> String {
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{}: {} pass, {} fail, {} skip, {} inconclusive",
            self.suite,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip),
            count(Status::Inconclusive)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let r = Report::new("t", vec![CheckReport::new("a.b").case(1).pass_if(true)]);
        let s = r.to_json();
        assert!(s.contains("\"schema_version\": 1"));
        assert!(s.contains("\"pass\""));
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back.checks, r.checks);
        assert!(Report::from_json("{\"schema_version\":2,\"suite\":\"x\",\"checks\":[]}").is_err());
    }
}
