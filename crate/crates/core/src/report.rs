//! Named numeric checks shared by every verification report.

use serde::{Deserialize, Serialize};

/// A single named residual check. `pass` holds exactly when the residual is
/// finite and at most the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

/// An ordered list of checks; failures are data, not errors.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.checks.push(Check::new(name, residual, tolerance));
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
