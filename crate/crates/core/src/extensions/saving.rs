use crate::error::{ModelError, Result};
use crate::params::{SavingMode, ScenarioParams};

/// Share of first-period income the young save.
pub fn saving_rate(params: &ScenarioParams) -> Result<f64> {
    match params.saving_mode {
        SavingMode::LinearOldOnly => Ok(1.0),
        SavingMode::LogUtility => {
            let beta = params.beta.ok_or(ModelError::MissingParameter("beta"))?;
            Ok(beta / (1.0 + beta))
        }
    }
}
