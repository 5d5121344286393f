//! Outcome types shared by the verification suites and the flat JSON record
//! format the CLI emits.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Names one verified identity: a short stable id and the formula in words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub id: &'static str,
    pub formula: &'static str,
}

#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub label: String,
    pub residual: MultiPoly,
}

impl ExactOutcome {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Result of checking an identity exactly over the polynomial ring; every
/// instance passes iff its residual is the zero polynomial.
#[derive(Clone, Debug)]
pub struct ExactReport {
    pub identity: Identity,
    pub outcomes: Vec<ExactOutcome>,
    pub elapsed: Duration,
}

impl ExactReport {
    pub(crate) fn run<F>(identity: Identity, labels: impl IntoIterator<Item = String>, mut residual: F) -> Self
    where
        F: FnMut(usize) -> MultiPoly,
    {
        let start = Instant::now();
        let outcomes = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| ExactOutcome { residual: residual(i), label })
            .collect();
        ExactReport { identity, outcomes, elapsed: start.elapsed() }
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(ExactOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&ExactOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericOutcome {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tol: f64,
}

impl NumericOutcome {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        NumericOutcome { label: label.into(), lhs, rhs, residual: (lhs - rhs).abs(), tol }
    }

    pub fn with_residual(label: impl Into<String>, lhs: f64, rhs: f64, residual: f64, tol: f64) -> Self {
        NumericOutcome { label: label.into(), lhs, rhs, residual, tol }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tol
    }
}

#[derive(Clone, Debug)]
pub struct NumericReport {
    pub identity: Identity,
    pub outcomes: Vec<NumericOutcome>,
    pub elapsed: Duration,
}

impl NumericReport {
    pub fn new(identity: Identity, outcomes: Vec<NumericOutcome>, elapsed: Duration) -> Self {
        NumericReport { identity, outcomes, elapsed }
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(NumericOutcome::passed)
    }

    pub fn worst(&self) -> Option<&NumericOutcome> {
        self.outcomes
            .iter()
            .max_by(|a, b| (a.residual / a.tol).total_cmp(&(b.residual / b.tol)))
    }

    pub fn first_failure(&self) -> Option<&NumericOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

/// One line of the machine-readable report.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub suite: String,
    pub check_id: String,
    pub paper_ref: String,
    pub status: Status,
    pub residual: f64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl ExactReport {
    pub fn records(&self, suite: &str) -> Vec<CheckRecord> {
        let per = self.elapsed.as_secs_f64() * 1e3 / self.outcomes.len().max(1) as f64;
        self.outcomes
            .iter()
            .map(|o| CheckRecord {
                suite: suite.to_string(),
                check_id: format!("{}/{}", self.identity.id, o.label),
                paper_ref: self.identity.formula.to_string(),
                status: Status::from_bool(o.passed()),
                residual: o.residual.l1_norm(),
                elapsed_ms: per,
                detail: (!o.passed()).then(|| format!("residual = {}", o.residual)),
            })
            .collect()
    }
}

impl NumericReport {
    pub fn records(&self, suite: &str) -> Vec<CheckRecord> {
        let per = self.elapsed.as_secs_f64() * 1e3 / self.outcomes.len().max(1) as f64;
        self.outcomes
            .iter()
            .map(|o| CheckRecord {
                suite: suite.to_string(),
                check_id: format!("{}/{}", self.identity.id, o.label),
                paper_ref: self.identity.formula.to_string(),
                status: Status::from_bool(o.passed()),
                residual: o.residual,
                elapsed_ms: per,
                detail: (!o.passed())
                    .then(|| format!("lhs = {:.17e}, rhs = {:.17e}, tol = {:e}", o.lhs, o.rhs, o.tol)),
            })
            .collect()
    }
}
