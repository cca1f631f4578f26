use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::parse::format_rational;
use crate::poly::Polynomial;
use crate::rational::{DegreeQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// Why a check could not finish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    Budget,
    Error,
}

/// Outcome of one verification.
///
/// A membership PASS carries its re-expanded certificate; a non-membership
/// PASS carries the nonzero normal form.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub degrees: Vec<String>,
    pub witness: Option<String>,
    pub certificate: Option<Vec<(String, usize)>>,
    pub stats: BTreeMap<String, Value>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub failure: Option<Failure>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            degrees: Vec::new(),
            witness: None,
            certificate: None,
            stats: BTreeMap::new(),
            timing_ms: 0.0,
            failure: None,
        }
    }

    /// Report for a check that raised `err`.
    pub fn errored(check: impl Into<String>, err: &Error) -> Self {
        let mut r = CheckReport::new(check);
        r.status = Status::Fail;
        r.failure = Some(if matches!(err, Error::Budget { .. }) { Failure::Budget } else { Failure::Error });
        r.note("error", err.to_string());
        r
    }

    pub fn skipped(check: impl Into<String>, why: &str) -> Self {
        let mut r = CheckReport::new(check);
        r.status = Status::Skip;
        r.note("summary", why);
        r
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.stats.insert(key.to_string(), value.into());
        self
    }

    /// Records a sub-assertion; any false one fails the check.
    pub fn require(&mut self, what: &str, ok: bool) -> &mut Self {
        if !ok {
            self.status = Status::Fail;
            let failed = self.stats.entry("failed".to_string()).or_insert_with(|| Value::Array(Vec::new()));
            if let Value::Array(v) = failed {
                v.push(Value::String(what.to_string()));
            }
        }
        self
    }

    pub fn degree(&mut self, d: &Rational) -> &mut Self {
        self.degrees.push(format_rational(d));
        self
    }

    pub fn degree_q(&mut self, d: &DegreeQ) -> &mut Self {
        match d.as_rational() {
            Some(r) => self.degree(r),
            None => {
                self.degrees.push("inf".into());
                self
            }
        }
    }

    pub fn witness(&mut self, p: &Polynomial) -> &mut Self {
        self.witness = Some(p.to_canonical_string());
        self
    }

    pub fn certificate(&mut self, cofactors: &[(Polynomial, usize)]) -> &mut Self {
        self.certificate = Some(cofactors.iter().map(|(c, j)| (c.to_canonical_string(), *j)).collect());
        self
    }

    pub fn summary(&self) -> String {
        match (self.stats.get("error"), self.stats.get("summary")) {
            (Some(Value::String(e)), _) => e.clone(),
            (_, Some(Value::String(s))) => s.clone(),
            _ => String::new(),
        }
    }

    /// JSON value without the timing field, the part covered by the
    /// determinism contract.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Value::Object(m) = &mut v {
            m.remove("timing_ms");
        }
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4}  {}", self.status, self.check)?;
        let s = self.summary();
        if !s.is_empty() {
            write!(f, "  {s}")?;
        }
        if let Some(Value::Array(failed)) = self.stats.get("failed") {
            let names: Vec<&str> = failed.iter().filter_map(Value::as_str).collect();
            write!(f, " [failed: {}]", names.join(", "))?;
        }
        Ok(())
    }
}

/// Runs `f` and stores its wall time in the report.
pub fn timed(check: &str, f: impl FnOnce(&mut CheckReport) -> crate::error::Result<()>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new(check);
    if let Err(e) = f(&mut r) {
        let mut err = CheckReport::errored(check, &e);
        err.degrees = r.degrees;
        r = err;
    }
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    r
}

/// Sorts by check id.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| a.check.cmp(&b.check));
}

/// Process exit code: 0 when nothing failed, 3 when a budget ran out, 1 otherwise.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.failure == Some(Failure::Budget)) {
        3
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}
