use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative/absolute comparison tolerance.
///
/// A residual `r` is accepted against a quantity of magnitude `scale` when
/// `r <= abs + rel * max(1, scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel >= 0.0 && rel.is_finite() && abs >= 0.0 && abs.is_finite()) {
            return Err(Error::Input(format!(
                "tolerance must be finite and nonnegative (rel={rel}, abs={abs})"
            )));
        }
        Ok(Self { rel, abs })
    }

    /// Default absolute part with a custom relative part.
    pub fn with_rel(rel: f64) -> Result<Self> {
        Self::new(rel, Self::default().abs)
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.max(1.0)
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.threshold(scale)
    }
}
