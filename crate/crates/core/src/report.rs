//! Verdicts of numerical property checks.

use serde::{Deserialize, Serialize};

/// Margin tolerance used for strict inequalities: a check passes only if
/// every margin exceeds 1e−13 (relative).
pub const STRICT_TOLERANCE: f64 = -1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Failed, but the shortfall is within the evaluation error estimate.
    Inconclusive,
    Violation,
}

/// Where the smallest margin was observed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstPoint {
    pub ell: f64,
    pub eta: f64,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim_id: String,
    pub grid_spec: String,
    /// Smallest observed margin; positive means the claim held with room.
    pub worst_margin: f64,
    pub worst_point: Option<WorstPoint>,
    /// `passed` ⇔ `worst_margin ≥ −tolerance`.
    pub tolerance: f64,
    pub passed: bool,
    pub status: Status,
    pub points: usize,
    /// Notes such as skipped points or truncated zero sets.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Accumulates margins into a `CheckReport`.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    claim_id: String,
    grid_spec: String,
    tolerance: f64,
    worst: f64,
    worst_err: f64,
    worst_point: Option<WorstPoint>,
    points: usize,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(claim_id: impl Into<String>, grid_spec: impl Into<String>, tolerance: f64) -> Self {
        Self {
            claim_id: claim_id.into(),
            grid_spec: grid_spec.into(),
            tolerance,
            worst: f64::INFINITY,
            worst_err: 0.0,
            worst_point: None,
            points: 0,
            notes: Vec::new(),
        }
    }

    pub fn strict(claim_id: impl Into<String>, grid_spec: impl Into<String>) -> Self {
        Self::new(claim_id, grid_spec, STRICT_TOLERANCE)
    }

    /// Records one margin with the error estimate of that margin. NaN margins
    /// count as violations.
    pub fn observe(&mut self, margin: f64, err: f64, ell: f64, eta: f64, x: f64) {
        self.points += 1;
        let m = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if m < self.worst || self.worst_point.is_none() {
            self.worst = m;
            self.worst_err = err;
            self.worst_point = Some(WorstPoint { ell, eta, x });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Marks the check failed outright (for example a structural error
    /// while computing zeros).
    pub fn fail(&mut self, note: impl Into<String>, ell: f64, eta: f64, x: f64) {
        self.note(note);
        self.observe(f64::NEG_INFINITY, 0.0, ell, eta, x);
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn finish(self) -> CheckReport {
        let passed = self.worst >= -self.tolerance;
        let status = if passed {
            Status::Pass
        } else if self.worst.is_finite() && self.worst + self.worst_err >= -self.tolerance {
            Status::Inconclusive
        } else {
            Status::Violation
        };
        CheckReport {
            claim_id: self.claim_id,
            grid_spec: self.grid_spec,
            worst_margin: self.worst,
            worst_point: self.worst_point,
            tolerance: self.tolerance,
            passed,
            status,
            points: self.points,
            notes: self.notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_claims_need_positive_margin() {
        let mut b = ReportBuilder::strict("demo", "none");
        b.observe(0.5, 0.0, 0.0, 0.0, 1.0);
        b.observe(2e-13, 0.0, 0.0, 0.0, 2.0);
        let r = b.finish();
        assert!(r.passed);
        assert_eq!(r.worst_point.unwrap().x, 2.0);

        let mut b = ReportBuilder::strict("demo", "none");
        b.observe(0.0, 1e-12, 0.0, 0.0, 1.0);
        let r = b.finish();
        assert!(!r.passed);
        assert_eq!(r.status, Status::Inconclusive);

        let mut b = ReportBuilder::new("demo", "none", 1e-12);
        b.observe(-1e-3, 1e-12, 0.0, 0.0, 1.0);
        assert_eq!(b.finish().status, Status::Violation);
    }

    #[test]
    fn nan_is_a_violation() {
        let mut b = ReportBuilder::new("demo", "none", 1.0);
        b.observe(f64::NAN, 0.0, 0.0, 0.0, 1.0);
        let r = b.finish();
        assert!(!r.passed);
        assert_eq!(r.status, Status::Violation);
    }
}
