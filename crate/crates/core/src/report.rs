//! Axiom reports shared by the bundle and triple checkers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// How a record was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Holds by construction of the data layout; recorded, not computed.
    Structural,
    /// A theorem for matrix spaces, spot-checked numerically.
    Analytic,
    /// Decided by the numerical residual.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomRecord {
    /// Stable identifier, e.g. `fell.axiom.5` or `triple.so_real.anticommute_J`.
    pub id: String,
    pub passed: bool,
    /// Advisory rows are reported but do not affect [`AxiomReport::passed`].
    pub enforced: bool,
    pub method: Method,
    pub worst_residual: f64,
    /// Magnitude the residual is measured against (`max(1, ‖inputs‖)`).
    pub scale: f64,
    pub witness: String,
}

impl AxiomRecord {
    pub fn numeric(id: &str, worst_residual: f64, scale: f64, passed: bool, witness: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            passed,
            enforced: true,
            method: Method::Numeric,
            worst_residual,
            scale: scale.max(1.0),
            witness: witness.into(),
        }
    }

    pub fn structural(id: &str, witness: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            passed: true,
            enforced: true,
            method: Method::Structural,
            worst_residual: 0.0,
            scale: 1.0,
            witness: witness.into(),
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn advisory(mut self) -> Self {
        self.enforced = false;
        self
    }

    /// `worst_residual / scale`.
    pub fn relative_residual(&self) -> f64 {
        self.worst_residual / self.scale.max(1.0)
    }

    pub fn status(&self) -> &'static str {
        match (self.enforced, self.passed) {
            (false, _) => "info",
            (true, true) => "pass",
            (true, false) => "fail",
        }
    }
}

/// Ordered list of axiom records, one per checked condition.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub records: Vec<AxiomRecord>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: AxiomRecord) {
        debug_assert!(
            self.get(&record.id).is_none(),
            "duplicate axiom id {}",
            record.id
        );
        self.records.push(record);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        for r in other.records {
            self.push(r);
        }
    }

    pub fn get(&self, id: &str) -> Option<&AxiomRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// True when every enforced record passed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed || !r.enforced)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomRecord> {
        self.records.iter().filter(|r| r.enforced && !r.passed)
    }

    /// Largest relative residual over enforced numeric rows.
    pub fn worst_relative_residual(&self) -> f64 {
        self.records
            .iter()
            .filter(|r| r.enforced)
            .map(AxiomRecord::relative_residual)
            .fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<6}  {:<10}  {:>10}  witness", "id", "status", "method", "residual");
        for r in &self.records {
            let method = match r.method {
                Method::Structural => "structural",
                Method::Analytic => "analytic",
                Method::Numeric => "numeric",
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<6}  {:<10}  {:>10.3e}  {}",
                r.id,
                r.status(),
                method,
                r.worst_residual,
                r.witness
            );
        }
        out
    }
}
