//! Labor as a second input of the real-estate sector.
//!
//! With mobile labor the two sector wages are equal and the employment split
//! solves (1−α)A(1−Nˣ)^(−α) = ρεa(Nˣ)^(ρ−1).

use crate::error::{ModelError, Result};
use crate::params::ScenarioParams;
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaborAllocation {
    /// Employment in real estate.
    pub nx: f64,
    /// Employment in the productive sector, 1 − Nˣ.
    pub nk: f64,
    /// Factor on the wage bill (1−α)A·K.
    pub income_multiplier: f64,
    pub mobile: bool,
}

fn labor_inputs(params: &ScenarioParams) -> Result<(f64, f64, f64)> {
    let rho = params.rho.ok_or(ModelError::MissingParameter("rho"))?;
    if params.epsilon <= 0.0 {
        return Err(ModelError::domain("labor in real estate needs epsilon > 0"));
    }
    let wage_k = (1.0 - params.alpha) * params.productivity();
    let wage_x = rho * params.epsilon * params.a;
    Ok((rho, wage_k, wage_x))
}

/// Equal-wage employment split with mobile labor.
pub fn real_estate_labor(params: &ScenarioParams) -> Result<LaborAllocation> {
    let (rho, wage_k, wage_x) = labor_inputs(params)?;
    let alpha = params.alpha;
    // Compare in logs: both sides span many orders of magnitude near the ends.
    let f =
        |nx: f64| (wage_k.ln() - alpha * (1.0 - nx).ln()) - (wage_x.ln() + (rho - 1.0) * nx.ln());
    // f < 0 as Nˣ -> 0 and f > 0 as Nˣ -> 1; halve towards each end until the
    // sign is right.
    let mut lo = 0.5;
    while f(lo) >= 0.0 {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Err(ModelError::domain("real-estate employment underflows"));
        }
    }
    let mut gap = 0.5;
    while f(1.0 - gap) <= 0.0 {
        gap *= 0.5;
        if gap < f64::EPSILON {
            return Err(ModelError::domain("productive employment underflows"));
        }
    }
    let nx = bisect(lo, 1.0 - gap, 0.0, f)?;
    let nk = 1.0 - nx;
    Ok(LaborAllocation {
        nx,
        nk,
        income_multiplier: nk.powf(-alpha),
        mobile: true,
    })
}

/// Wage-bill factor with immobile labor and a given real-estate employment.
///
/// Total wages are ρεa(Nˣ)^ρ K + (1−α)A(Nᵏ)^(1−α) K; the factor divides this
/// by (1−α)A·K.
pub fn immobile_income_multiplier(params: &ScenarioParams, nx: f64) -> Result<f64> {
    let (rho, wage_k, wage_x) = labor_inputs(params)?;
    if !(nx > 0.0 && nx < 1.0) {
        return Err(ModelError::domain(format!(
            "real-estate employment {nx} outside (0, 1)"
        )));
    }
    let nk = 1.0 - nx;
    let alpha = params.alpha;
    Ok((wage_x * nx.powf(rho) + wage_k * nk.powf(1.0 - alpha)) / wage_k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_labor(eps: f64) -> ScenarioParams {
        let mut p = ScenarioParams::open_baseline().with_epsilon(eps);
        p.rho = Some(0.5);
        p
    }

    #[test]
    fn mobile_split_equalises_wages() {
        let p = p2_labor(0.1);
        let lab = real_estate_labor(&p).unwrap();
        assert!(lab.nx > 0.0 && lab.nx < 1.0);
        let lhs = (1.0 - p.alpha) * p.productivity() * lab.nk.powf(-p.alpha);
        let rhs = 0.5 * 0.1 * p.a * lab.nx.powf(-0.5);
        assert!((lhs - rhs).abs() / rhs < 1e-12);
        assert!(lab.income_multiplier > 1.0);
    }

    #[test]
    fn vanishing_real_estate_productivity_empties_the_sector() {
        let mut prev = 1.0;
        for eps in [1e-1, 1e-3, 1e-6, 1e-9] {
            let nx = real_estate_labor(&p2_labor(eps)).unwrap().nx;
            assert!(nx < prev);
            prev = nx;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn immobile_matches_mobile_at_equal_wages() {
        let p = p2_labor(0.3);
        let lab = real_estate_labor(&p).unwrap();
        let imm = immobile_income_multiplier(&p, lab.nx).unwrap();
        assert!((imm - lab.income_multiplier).abs() < 1e-12 * imm);
    }

    #[test]
    fn zero_epsilon_is_rejected() {
        assert!(matches!(
            real_estate_labor(&p2_labor(0.0)),
            Err(ModelError::Domain(_))
        ));
    }
}
