//! Two-dimensional dynamics in (φ, 1+r), both jump variables.
//!
//! φ follows the open-economy map evaluated at the current rate. The next
//! rate clears the money market: real balances grow by the return on money,
//! brace_{t+1}·(1+g_t) = (1+r_t)(1+μ)·brace_t with brace per unit of A·K.

use super::{money_brace, solve_bgp_monetary};
use crate::error::{ModelError, Result};
use crate::extensions::entrepreneur_income;
use crate::fd::{eigen_moduli, jacobian2, Mat2};
use crate::params::{LeveragedReturns, ScenarioParams};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonetaryDynState {
    pub phi: f64,
    pub gross_r: f64,
}

fn growth_at(params: &ScenarioParams, phi: f64, gross_r: f64) -> Result<(f64, LeveragedReturns)> {
    let lr = LeveragedReturns::at(
        params.capital_return(),
        params.theta,
        params.theta_x,
        gross_r,
    )?;
    let income = entrepreneur_income(params)?;
    let g = params.productivity() * lr.capital_leverage * (income - lr.land_downpayment * phi);
    Ok((g, lr))
}

/// One step of the map. Needs `e` in the parameters.
pub fn dynamics_step(state: MonetaryDynState, params: &ScenarioParams) -> Result<MonetaryDynState> {
    let e = params.e.ok_or(ModelError::MissingParameter("e"))?;
    let gross_mu = params.gross_mu()?;
    let rc = params.capital_return();
    let lower = params.theta * rc;
    if !(state.gross_r > lower) {
        return Err(ModelError::domain(format!(
            "1+r = {} does not exceed theta*Rc = {lower}",
            state.gross_r
        )));
    }
    let (growth, lr) = growth_at(params, state.phi, state.gross_r)?;
    if !(growth > 0.0) {
        return Err(ModelError::domain(format!(
            "phi = {} leaves no savings for capital",
            state.phi
        )));
    }
    let brace = money_brace(params, e, state.phi, state.gross_r)?;
    if !(brace > 0.0) {
        return Err(ModelError::domain(format!(
            "real money balances are nonpositive ({brace}) at the current state"
        )));
    }
    let phi_next = lr.rx * state.phi / growth - params.dividend_ratio();
    let target = state.gross_r * gross_mu * brace / growth;
    let lo = lower * (1.0 + 1e-12);
    let mut failure = None;
    let r_next = bisect(lo, rc, 0.0, |r| match money_brace(params, e, phi_next, r) {
        Ok(b) => b - target,
        Err(err) => {
            failure.get_or_insert(err);
            f64::NAN
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(MonetaryDynState {
        phi: phi_next,
        gross_r: r_next?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterminacyReport {
    pub steady_state: MonetaryDynState,
    /// Endowment coefficient used; twice the minimum when the scenario has none.
    pub e: f64,
    pub jacobian: Mat2,
    pub eigen_moduli: (f64, f64),
    /// Moduli from the Jacobian at half the step.
    pub eigen_moduli_half_step: (f64, f64),
    pub locally_determinate: bool,
    /// A modulus lies within 1e-9 of one.
    pub inconclusive: bool,
}

/// Local stability of the steady state. Two jump variables make it locally
/// determinate iff both eigenvalues lie outside the unit circle.
pub fn determinacy_report(params: &ScenarioParams) -> Result<DeterminacyReport> {
    let bgp = solve_bgp_monetary(params)?;
    let e = match params.e {
        Some(e) => e,
        None => (2.0 * bgp.min_e).max(0.0),
    };
    let p = ScenarioParams {
        e: Some(e),
        ..params.clone()
    };
    let x = [bgp.phi_star, bgp.gross_r];
    let step = |v: [f64; 2]| -> Result<[f64; 2]> {
        let next = dynamics_step(
            MonetaryDynState {
                phi: v[0],
                gross_r: v[1],
            },
            &p,
        )?;
        Ok([next.phi, next.gross_r])
    };
    let jacobian = jacobian2(step, x, 1e-6)?;
    let jac_half = jacobian2(step, x, 5e-7)?;
    let moduli = eigen_moduli(&jacobian);
    let inconclusive = (moduli.0 - 1.0).abs() <= 1e-9 || (moduli.1 - 1.0).abs() <= 1e-9;
    Ok(DeterminacyReport {
        steady_state: MonetaryDynState {
            phi: bgp.phi_star,
            gross_r: bgp.gross_r,
        },
        e,
        jacobian,
        eigen_moduli: moduli,
        eigen_moduli_half_step: eigen_moduli(&jac_half),
        locally_determinate: moduli.0 > 1.0 && moduli.1 > 1.0,
        inconclusive,
    })
}
