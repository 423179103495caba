//! One checked inequality.

use serde::Serialize;

/// Default absolute tolerance for every verdict.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Failed,
    Skipped,
}

/// A checked inequality. `slack` is oriented so that `holds ⟺ slack ≥ −tol`
/// for lower and upper bounds alike. Skipped verdicts carry a reason and
/// leave `rhs`/`slack` as NaN (serialized as `null`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub anchor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub tol: f64,
    pub dependencies: Vec<String>,
}

impl Verdict {
    fn new(name: &str, anchor: &str, lhs: f64, rhs: f64, slack: f64, tol: f64) -> Self {
        Verdict {
            name: name.to_string(),
            anchor: anchor.to_string(),
            lhs,
            rhs,
            slack,
            // NaN slack fails
            holds: slack >= -tol,
            skipped: false,
            reason: None,
            tol,
            dependencies: Vec::new(),
        }
    }

    /// `lhs ≥ rhs`.
    pub fn at_least(name: &str, anchor: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, anchor, lhs, rhs, lhs - rhs, tol)
    }

    /// `lhs ≤ rhs`, stored with `slack = rhs − lhs`.
    pub fn at_most(name: &str, anchor: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, anchor, lhs, rhs, rhs - lhs, tol)
    }

    pub fn skip(name: &str, anchor: &str, reason: impl Into<String>, tol: f64) -> Self {
        Verdict {
            name: name.to_string(),
            anchor: anchor.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            holds: false,
            skipped: true,
            reason: Some(reason.into()),
            tol,
            dependencies: Vec::new(),
        }
    }

    pub fn with_lhs(mut self, lhs: f64) -> Self {
        self.lhs = lhs;
        self
    }

    pub fn depends_on(mut self, note: impl Into<String>) -> Self {
        self.dependencies.push(note.into());
        self
    }

    pub fn status(&self) -> Status {
        if self.skipped {
            Status::Skipped
        } else if self.holds {
            Status::Holds
        } else {
            Status::Failed
        }
    }
}
