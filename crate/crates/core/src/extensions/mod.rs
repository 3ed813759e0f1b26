//! Model variants: log-utility saving, labor in real estate, unbalanced growth
//! with imperfect spillovers, fundamental values and bubble detection.

mod bubble;
mod labor;
mod saving;
mod unbalanced;

pub use bubble::{bubble_detect_unbalanced, fundamental_value, BubbleReport, LandValuation};
pub use labor::{immobile_income_multiplier, real_estate_labor, LaborAllocation};
pub use saving::saving_rate;
pub use unbalanced::{
    phi_double_star, stability_matrix, unbalanced_path, StabilityReport, UnbalancedPath,
    UnbalancedState,
};

use crate::error::Result;
use crate::params::ScenarioParams;

/// Savings of the young per unit of A·K: saving rate times the wage bill,
/// including the labor-reallocation factor when real estate employs labor.
pub fn young_savings(params: &ScenarioParams) -> Result<f64> {
    let multiplier = match params.rho {
        Some(_) => real_estate_labor(params)?.income_multiplier,
        None => 1.0,
    };
    Ok(saving_rate(params)? * (1.0 - params.alpha) * multiplier)
}

/// Entrepreneurs' savings per unit of A·K, the income term that every
/// balanced-growth solver uses in place of η(1−α).
pub fn entrepreneur_income(params: &ScenarioParams) -> Result<f64> {
    Ok(params.eta * young_savings(params)?)
}
