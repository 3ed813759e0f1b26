use thiserror::Error;

use crate::assumptions::AssumptionReport;

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Failure modes shared by every solver in the crate.
#[derive(Debug, Clone, Error)]
pub enum ModelError {
    /// An input or intermediate state lies outside the region where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no equilibrium: {0}")]
    NoEquilibrium(String),

    #[error("assumption violated: {}", .0.failed_ids().join(", "))]
    AssumptionViolated(AssumptionReport),

    #[error("root not bracketed on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    RootNotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),

    #[error("shooting failed: {0}")]
    ShootingFailed(String),

    #[error("no admissible finite-difference step >= {min_step:e} for `{param}` at {at}")]
    RegionTooNarrow {
        param: &'static str,
        at: f64,
        min_step: f64,
    },

    #[error("truncated sum did not reach tolerance within {cap} terms")]
    TruncationCap { cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl ModelError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ModelError::Domain(msg.into())
    }

    /// Short stable code used in CSV reason columns.
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::Domain(_) => "domain",
            ModelError::NoEquilibrium(_) => "no_equilibrium",
            ModelError::AssumptionViolated(_) => "assumption_violated",
            ModelError::RootNotBracketed { .. } => "root_not_bracketed",
            ModelError::MissingParameter(_) => "missing_parameter",
            ModelError::ShootingFailed(_) => "shooting_failed",
            ModelError::RegionTooNarrow { .. } => "region_too_narrow",
            ModelError::TruncationCap { .. } => "truncation_cap",
            ModelError::InvalidArgument(_) => "invalid_argument",
        }
    }
}
