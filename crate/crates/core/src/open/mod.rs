//! Small open economy: the safe rate is given from abroad.
//!
//! Everything is expressed through φ = P/(A·K), the value of land relative to
//! the productive sector. With c = A·lev the growth factor is
//! G(φ) = c·(inc − dp·φ) and land speculation evolves as
//! φ' = φ·Rˣ/G(φ) − εa^α.

mod decompose;
mod path;

pub use decompose::{decompose, Decomposition};
pub use path::{simulate, temporary_shock, Belief, PathState, PhiStart, ShockPaths};

use crate::assumptions::{check_assumptions, AssumptionId, AssumptionReport};
use crate::error::{ModelError, Result};
use crate::extensions::entrepreneur_income;
use crate::params::{Economy, LeveragedReturns, ScenarioParams};
use crate::roots::{bisect, quadratic_roots};
use crate::EPSILON_CEILING;

/// Constants of the open economy at fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenModel {
    pub productivity: f64,
    /// Entrepreneurs' savings per unit of A·K.
    pub income: f64,
    pub returns: LeveragedReturns,
    /// Land rent per unit of A·K, εa^α.
    pub dividend: f64,
    pub delta: f64,
}

impl OpenModel {
    pub fn new(params: &ScenarioParams) -> Result<Self> {
        params.validate()?;
        let returns = LeveragedReturns::at(
            params.capital_return(),
            params.theta,
            params.theta_x,
            params.gross_r()?,
        )?;
        Ok(OpenModel {
            productivity: params.productivity(),
            income: entrepreneur_income(params)?,
            returns,
            dividend: params.dividend_ratio(),
            delta: params.delta,
        })
    }

    /// A·lev, the slope linking own funds to next-period capital.
    pub fn growth_scale(&self) -> f64 {
        self.productivity * self.returns.capital_leverage
    }

    /// φ at which speculation absorbs all savings and growth stops.
    pub fn phi_bar(&self) -> f64 {
        self.income / self.returns.land_downpayment
    }

    /// Growth factor without domain checks.
    pub fn growth(&self, phi: f64) -> f64 {
        self.growth_scale() * (self.income - self.returns.land_downpayment * phi)
    }

    /// Next-period φ without domain checks.
    pub fn map(&self, phi: f64) -> f64 {
        phi * self.returns.rx / self.growth(phi) - self.dividend
    }

    /// Positive and other root of the steady-state quadratic.
    fn roots(&self) -> Result<(f64, f64)> {
        let c = self.growth_scale();
        let dp = self.returns.land_downpayment;
        let s = self.dividend;
        let qa = c * dp;
        let qb = -(c * self.income - c * dp * s - self.returns.rx);
        let qc = -c * self.income * s;
        if qa == 0.0 {
            // θˣ = 1: no down payment, the quadratic degenerates.
            let root = -qc / qb;
            return Ok((root, f64::NAN));
        }
        quadratic_roots(qa, qb, qc).ok_or_else(|| {
            ModelError::NoEquilibrium("steady-state quadratic has no real root".into())
        })
    }

    fn check_phi(&self, phi: f64) -> Result<()> {
        let bar = self.phi_bar();
        if phi.is_nan() || phi >= bar {
            return Err(ModelError::domain(format!(
                "phi = {phi} is not below the blow-up bound {bar}"
            )));
        }
        Ok(())
    }
}

/// Balanced growth path of the open economy.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenBgp {
    pub phi_star: f64,
    /// 1+g*.
    pub gross_growth: f64,
    pub phi_bar: f64,
    /// |φ* − map(φ*)|.
    pub residual: f64,
    /// Land value over GDP, φ*/(1+εa^α).
    pub land_gdp_ratio: f64,
    /// The second root of the steady-state quadratic: 0 when ε = 0 (the
    /// landless equilibrium), negative otherwise. Never an equilibrium here.
    pub other_root: f64,
    pub rx_star: f64,
    pub returns: LeveragedReturns,
    pub income: f64,
    pub assumptions: AssumptionReport,
}

/// Next-period φ, defined for 0 ≤ φ < φ̄.
pub fn phi_map(phi: f64, params: &ScenarioParams) -> Result<f64> {
    let m = OpenModel::new(params)?;
    if phi < 0.0 {
        return Err(ModelError::domain(format!("phi = {phi} is negative")));
    }
    m.check_phi(phi)?;
    Ok(m.map(phi))
}

/// 1+g as a function of φ. Defined up to and including φ̄, where it is 0.
pub fn growth_given_phi(phi: f64, params: &ScenarioParams) -> Result<f64> {
    let m = OpenModel::new(params)?;
    let bar = m.phi_bar();
    if phi.is_nan() || phi > bar {
        return Err(ModelError::domain(format!(
            "phi = {phi} exceeds the blow-up bound {bar}"
        )));
    }
    if phi == bar {
        return Ok(0.0);
    }
    Ok(m.growth(phi))
}

fn open_assumptions(params: &ScenarioParams) -> AssumptionReport {
    let mut rep = check_assumptions(params, Economy::Open, None);
    rep.records
        .retain(|r| matches!(r.id, AssumptionId::A1 | AssumptionId::A2));
    rep
}

/// Solves the steady state without the depreciation floor check.
pub(crate) fn solve_bgp_unfloored(params: &ScenarioParams) -> Result<OpenBgp> {
    params.validate()?;
    params.gross_r()?;
    let assumptions = open_assumptions(params);
    if !assumptions.all_hold() || assumptions.records.len() < 2 {
        return Err(ModelError::AssumptionViolated(assumptions));
    }
    let m = OpenModel::new(params)?;
    let (phi_star, other_root) = m.roots()?;
    let phi_bar = m.phi_bar();
    if !(phi_star > 0.0 && phi_star < phi_bar) {
        return Err(ModelError::NoEquilibrium(format!(
            "no root in (0, phi_bar): phi = {phi_star}, phi_bar = {phi_bar}"
        )));
    }
    let gross_growth = m.growth(phi_star);
    Ok(OpenBgp {
        phi_star,
        gross_growth,
        phi_bar,
        residual: (phi_star - m.map(phi_star)).abs(),
        land_gdp_ratio: phi_star / (1.0 + m.dividend),
        other_root,
        rx_star: m.returns.rx,
        returns: m.returns,
        income: m.income,
        assumptions,
    })
}

/// Balanced growth path. Fails with `NoEquilibrium` when land is so
/// productive that 1+g* would fall below 1−δ.
pub fn solve_bgp(params: &ScenarioParams) -> Result<OpenBgp> {
    let bgp = solve_bgp_unfloored(params)?;
    let floor = 1.0 - params.delta;
    if bgp.gross_growth < floor {
        return Err(ModelError::NoEquilibrium(format!(
            "1+g* = {} is below 1-delta = {floor}; epsilon exceeds its upper bound",
            bgp.gross_growth
        )));
    }
    Ok(bgp)
}

/// Land productivity at which 1+g* reaches 1−δ, searched below `ceiling`.
/// Returns +∞ when there is no crossing (always the case for δ = 1).
pub fn epsilon_bar_below(params: &ScenarioParams, ceiling: f64) -> Result<f64> {
    let floor = 1.0 - params.delta;
    if floor <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let excess = |eps: f64| -> Result<f64> {
        Ok(solve_bgp_unfloored(&params.with_epsilon(eps))?.gross_growth - floor)
    };
    if excess(0.0)? <= 0.0 {
        return Ok(0.0);
    }
    if excess(ceiling)? > 0.0 {
        return Ok(f64::INFINITY);
    }
    let mut failure = None;
    let root = bisect(0.0, ceiling, 1e-10, |eps| match excess(eps) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    root
}

/// [`epsilon_bar_below`] with the default search ceiling.
pub fn epsilon_bar(params: &ScenarioParams) -> Result<f64> {
    epsilon_bar_below(params, EPSILON_CEILING)
}
