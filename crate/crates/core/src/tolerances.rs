//! Numerical tolerances shared by every module.
//!
//! All thresholds live in one record so that reports can echo the exact
//! values they were produced with. The `BEURLING_TOL` environment variable
//! accepts a JSON object whose fields override the defaults, e.g.
//! `{"node_residual": 1e-8}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "BEURLING_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Floor below which a Carleson constant is treated as zero.
    pub delta_min: f64,
    /// Maximum accepted |f(x_n) - alpha_n| relative to max(1, ||alpha||_inf).
    pub node_residual: f64,
    /// Relative slack on the uniform bound for sum_j |F_j(x)|.
    pub bound_rel: f64,
    /// Relative slack for the |B_j(x_j)| >= delta^2 guardrail.
    pub conditioning_rel: f64,
    /// Lemma audits: inequalities fail when the margin drops below `-margin`.
    pub margin: f64,
    /// Lemma audits: identities fail when the gap exceeds `identity`.
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            delta_min: 1e-6,
            node_residual: 1e-9,
            bound_rel: 1e-6,
            conditioning_rel: 1e-6,
            margin: 1e-12,
            identity: 1e-12,
        }
    }
}

impl Tolerances {
    /// Defaults with any `BEURLING_TOL` overrides applied.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(raw) => Self::from_override_json(&raw),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn from_override_json(raw: &str) -> Result<Self> {
        let tol: Tolerances = serde_json::from_str(raw).map_err(|e| Error::InvalidTolerance(e.to_string()))?;
        tol.validate()?;
        Ok(tol)
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("delta_min", self.delta_min),
            ("node_residual", self.node_residual),
            ("bound_rel", self.bound_rel),
            ("conditioning_rel", self.conditioning_rel),
            ("margin", self.margin),
            ("identity", self.identity),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidTolerance(format!("{name} = {v}")));
            }
        }
        if self.delta_min >= 1.0 {
            return Err(Error::InvalidTolerance("delta_min must be < 1".into()));
        }
        Ok(())
    }
}
