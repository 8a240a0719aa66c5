//! Machine-readable verification reports.
//!
//! Every check line carries a stable identity tag, a pass flag that reflects
//! exact (zero-residual) verification, and the numeric magnitude of the worst
//! residual entry for diagnostics. Serialisation is deterministic: parameters
//! are kept in sorted maps and no timestamps are recorded.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::matrix::SurdMat;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub identity: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_columns: Option<usize>,
    pub max_residual: String,
    pub pass: bool,
}

impl CheckLine {
    /// Check that a residual matrix is exactly zero.
    pub fn exact(identity: &str, description: &str, residual: &SurdMat) -> Self {
        let pass = residual.is_zero();
        CheckLine {
            identity: identity.to_string(),
            description: description.to_string(),
            interior_columns: None,
            max_residual: if pass {
                "0".to_string()
            } else {
                format!("{:.3e}", residual.max_abs())
            },
            pass,
        }
    }

    /// Check that a residual matrix vanishes on the given columns.
    pub fn exact_on_columns(
        identity: &str,
        description: &str,
        residual: &SurdMat,
        cols: &[usize],
    ) -> Self {
        let pass = residual.columns_are_zero(cols);
        CheckLine {
            identity: identity.to_string(),
            description: description.to_string(),
            interior_columns: Some(cols.len()),
            max_residual: if pass {
                "0".to_string()
            } else {
                format!("{:.3e}", residual.max_abs_in_columns(cols))
            },
            pass,
        }
    }

    /// Check recorded from a boolean outcome (used when the verification is
    /// not naturally a single residual matrix).
    pub fn flag(identity: &str, description: &str, pass: bool) -> Self {
        CheckLine {
            identity: identity.to_string(),
            description: description.to_string(),
            interior_columns: None,
            max_residual: if pass { "0" } else { "nonzero" }.to_string(),
            pass,
        }
    }

    pub fn with_interior(mut self, cols: usize) -> Self {
        self.interior_columns = Some(cols);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub label: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckLine>,
    pub pass: bool,
}

impl Report {
    pub fn new(label: &str) -> Self {
        Report {
            label: label.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn set_param(&mut self, key: &str, value: String) {
        self.params.insert(key.to_string(), value);
    }

    pub fn push(&mut self, line: CheckLine) {
        self.pass &= line.pass;
        self.checks.push(line);
    }

    pub fn merge(&mut self, other: Report) {
        for line in other.checks {
            self.push(line);
        }
    }

    pub fn failed(&self) -> Vec<&CheckLine> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Deterministic, newline-terminated JSON rendering.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
