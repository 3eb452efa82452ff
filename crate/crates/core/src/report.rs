//! Machine-readable verification reports shared by every suite.

use serde::Serialize;

/// One verified statement.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub params: String,
    /// Trapezoid grid size (numeric checks only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Truncation level of the weight product (numeric checks only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Decimal digits of working precision (numeric checks only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    /// Worst absolute residual; zero for exact checks that hold.
    pub residual: f64,
    /// Largest residual accepted.
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// `10^x`, saturating to zero below the `f64` range.
pub fn from_log10(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(x)
    }
}

impl CheckReport {
    /// An exact check: passes iff `ok`.
    pub fn exact(check: impl Into<String>, params: impl Into<String>, ok: bool) -> Self {
        CheckReport {
            check: check.into(),
            params: params.into(),
            points: None,
            truncation: None,
            precision: None,
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
            detail: None,
        }
    }

    /// A numeric check with residual `10^residual_log10` against `10^tol_log10`.
    pub fn numeric(check: impl Into<String>, params: impl Into<String>, residual_log10: f64, tol_log10: f64) -> Self {
        CheckReport {
            check: check.into(),
            params: params.into(),
            points: None,
            truncation: None,
            precision: None,
            residual: from_log10(residual_log10),
            tolerance: from_log10(tol_log10),
            pass: residual_log10 < tol_log10,
            detail: None,
        }
    }

    pub fn with_grid(mut self, points: usize, truncation: usize, digits: usize) -> Self {
        self.points = Some(points);
        self.truncation = Some(truncation);
        self.precision = Some(digits);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// A named collection of checks, sorted by check name.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.check.cmp(&b.check));
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.into(), pass, checks }
    }

    /// The failing check with the largest residual.
    pub fn worst_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().filter(|c| !c.pass).max_by(|a, b| a.residual.total_cmp(&b.residual))
    }

    /// Largest residual among passing numeric checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}
