//! Closed economy with fiat money. The safe rate is the return on money,
//! (1+g*)/(1+μ), so it is pinned down jointly with φ* and g*.
//!
//! Writing k = 1 − θˣ(1+μ), cθ = θˣ(1+μ), B = Rᶜ(1−θ)/(1−θˣ) and s = εa^α,
//! the steady-state φ solves
//! A·k·φ² + (B·k + A·k·s − A·inc − A·cθ·s)·φ − s·(A·inc + A·cθ·s + B·cθ) = 0
//! and then 1+r* = Rᶜ/(1−θˣ)·[(1−θ)/((1+μ)(1+s/φ)) − (θˣ−θ)].

mod dynamics;

pub use dynamics::{determinacy_report, dynamics_step, DeterminacyReport, MonetaryDynState};

use crate::assumptions::{check_assumptions, AssumptionId, AssumptionReport};
use crate::error::{ModelError, Result};
use crate::extensions::{entrepreneur_income, saving_rate, young_savings};
use crate::params::{Economy, LeveragedReturns, ScenarioParams};
use crate::roots::quadratic_roots;

/// Gross returns for the ordering Rᶜ > 1+g* > 1+r*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnOrdering {
    pub rc: f64,
    pub g: f64,
    pub r: f64,
}

impl ReturnOrdering {
    pub fn holds(&self) -> bool {
        self.rc > self.g && self.g > self.r
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonetaryBgp {
    pub phi_star: f64,
    /// 1+r*.
    pub gross_r: f64,
    /// 1+g*.
    pub gross_growth: f64,
    pub ordering: ReturnOrdering,
    /// Real balances per unit of A·K at the scenario's e; `None` without e.
    pub money_coefficient: Option<f64>,
    /// Smallest e with nonnegative real balances.
    pub min_e: f64,
    pub credit_gdp: f64,
    /// Relative residual of the steady-state quadratic at φ*.
    pub residual: f64,
    /// Second root of the quadratic (0 when ε = 0, negative otherwise).
    pub other_root: f64,
    /// Leveraged returns evaluated at r*.
    pub returns: LeveragedReturns,
    pub income: f64,
    pub assumptions: AssumptionReport,
}

struct Quadratic {
    qa: f64,
    qb: f64,
    qc: f64,
}

impl Quadratic {
    fn new(params: &ScenarioParams, income: f64, gross_mu: f64) -> Self {
        let a_big = params.productivity();
        let c_theta = params.theta_x * gross_mu;
        let k = 1.0 - c_theta;
        let b = params.capital_return() * (1.0 - params.theta) / (1.0 - params.theta_x);
        let s = params.dividend_ratio();
        Quadratic {
            qa: a_big * k,
            qb: b * k + a_big * k * s - a_big * income - a_big * c_theta * s,
            qc: -s * (a_big * income + a_big * c_theta * s + b * c_theta),
        }
    }

    fn relative_residual(&self, x: f64) -> f64 {
        let value = self.qa * x * x + self.qb * x + self.qc;
        let scale = (self.qa * x * x).abs() + (self.qb * x).abs() + self.qc.abs();
        if scale == 0.0 {
            0.0
        } else {
            value.abs() / scale
        }
    }
}

/// 1+r implied by φ on the balanced path.
pub fn gross_rate_given_phi(params: &ScenarioParams, phi: f64) -> Result<f64> {
    let gross_mu = params.gross_mu()?;
    let s = params.dividend_ratio();
    let rc = params.capital_return();
    Ok(rc / (1.0 - params.theta_x)
        * ((1.0 - params.theta) / (gross_mu * (1.0 + s / phi)) - (params.theta_x - params.theta)))
}

/// Balanced growth path of the monetary economy.
///
/// A4 (and A3 when ε = 0) are checked up front. For ε > 0, A3 involves φ*
/// and is checked after solving; a violation means leverage would be
/// infinite, reported as `NoEquilibrium`.
pub fn solve_bgp_monetary(params: &ScenarioParams) -> Result<MonetaryBgp> {
    params.validate()?;
    let gross_mu = params.gross_mu()?;
    let income = entrepreneur_income(params)?;
    let pre = check_assumptions(params, Economy::Monetary, None);
    if !pre.all_hold() {
        return Err(ModelError::AssumptionViolated(pre));
    }
    if params.theta_x >= 1.0 {
        return Err(ModelError::domain(
            "theta_x = 1 leaves the land return undefined",
        ));
    }
    let quad = Quadratic::new(params, income, gross_mu);
    let (phi_star, other_root) = quadratic_roots(quad.qa, quad.qb, quad.qc).ok_or_else(|| {
        ModelError::NoEquilibrium("steady-state quadratic has no real root".into())
    })?;
    if !(phi_star > 0.0) {
        return Err(ModelError::NoEquilibrium(format!(
            "largest root phi = {phi_star} is not positive"
        )));
    }
    let assumptions = check_assumptions(params, Economy::Monetary, Some(phi_star));
    if !assumptions.all_hold() {
        return Err(ModelError::NoEquilibrium(format!(
            "solution violates {}",
            assumptions.failed_ids().join(", ")
        )));
    }
    let gross_r = gross_rate_given_phi(params, phi_star)?;
    let gross_growth = gross_r * gross_mu;
    let rc = params.capital_return();
    let returns = LeveragedReturns::at(rc, params.theta, params.theta_x, gross_r)?;

    let s = params.dividend_ratio();
    let credit_gdp = params.theta * rc * gross_mu / ((1.0 + s) * params.productivity())
        + params.theta_x * (phi_star + s) * gross_mu / (1.0 + s);

    let mut bgp = MonetaryBgp {
        phi_star,
        gross_r,
        gross_growth,
        ordering: ReturnOrdering {
            rc,
            g: gross_growth,
            r: gross_r,
        },
        money_coefficient: None,
        min_e: f64::NAN,
        credit_gdp,
        residual: quad.relative_residual(phi_star),
        other_root,
        returns,
        income,
        assumptions,
    };
    let money = money_price_coefficient(params, &bgp)?;
    bgp.money_coefficient = money.coefficient;
    bgp.min_e = money.min_e;
    Ok(bgp)
}

/// Landless benchmark: P = 0, so 1+r* = η(1−α)A/(1+μ) + θRᶜ and
/// 1+g* = (1+r*)(1+μ). Land productivity is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandlessBgp {
    pub gross_r: f64,
    pub gross_growth: f64,
}

pub fn solve_landless(params: &ScenarioParams) -> Result<LandlessBgp> {
    params.validate()?;
    let gross_mu = params.gross_mu()?;
    let income = entrepreneur_income(params)?;
    let theta_rc = params.theta * params.capital_return();
    let gross_r = income * params.productivity() / gross_mu + theta_rc;
    if gross_r <= theta_rc {
        return Err(ModelError::domain(format!(
            "1+r* = {gross_r} does not exceed theta*Rc = {theta_rc}"
        )));
    }
    Ok(LandlessBgp {
        gross_r,
        gross_growth: gross_r * gross_mu,
    })
}

/// Bracket of the money-market condition: young savings plus saved worker
/// endowments, minus next-period capital and land, all per unit of A·K.
pub(crate) fn money_brace(params: &ScenarioParams, e: f64, phi: f64, gross_r: f64) -> Result<f64> {
    let income = entrepreneur_income(params)?;
    let lr = LeveragedReturns::at(
        params.capital_return(),
        params.theta,
        params.theta_x,
        gross_r,
    )?;
    let endowment = saving_rate(params)? * (1.0 - params.eta) * e * params.a.powf(params.alpha);
    let next_capital = lr.capital_leverage * (income - lr.land_downpayment * phi);
    Ok(young_savings(params)? + endowment - next_capital - phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoneyPrice {
    /// Real balances per unit of A·K at the scenario's e.
    pub coefficient: Option<f64>,
    /// Real balances per unit of K, A times the coefficient.
    pub q0m0_per_k0: Option<f64>,
    /// e at which real balances are zero.
    pub min_e: f64,
    /// Increase of the coefficient per unit of e.
    pub slope: f64,
}

/// Real money balances on the balanced path. A negative coefficient is not
/// an error: it says the scenario's e is too small for a monetary equilibrium.
pub fn money_price_coefficient(params: &ScenarioParams, bgp: &MonetaryBgp) -> Result<MoneyPrice> {
    let at_zero = money_brace(params, 0.0, bgp.phi_star, bgp.gross_r)?;
    let slope = saving_rate(params)? * (1.0 - params.eta) * params.a.powf(params.alpha);
    let coefficient = match params.e {
        Some(e) => Some(money_brace(params, e, bgp.phi_star, bgp.gross_r)?),
        None => None,
    };
    Ok(MoneyPrice {
        coefficient,
        q0m0_per_k0: coefficient.map(|c| c * params.productivity()),
        min_e: -at_zero / slope,
        slope,
    })
}

/// Credit over GDP on the balanced path.
pub fn credit_gdp(params: &ScenarioParams, bgp: &MonetaryBgp) -> Result<f64> {
    let gross_mu = params.gross_mu()?;
    let s = params.dividend_ratio();
    Ok(
        params.theta * params.capital_return() * gross_mu / ((1.0 + s) * params.productivity())
            + params.theta_x * (bgp.phi_star + s) * gross_mu / (1.0 + s),
    )
}

/// Keeps only A3/A4 records; used by reports.
pub fn monetary_assumptions(params: &ScenarioParams, phi_star: Option<f64>) -> AssumptionReport {
    let mut rep = check_assumptions(params, Economy::Monetary, phi_star);
    rep.records
        .retain(|r| matches!(r.id, AssumptionId::A3 | AssumptionId::A4));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn p3() -> ScenarioParams {
        ScenarioParams::monetary_baseline()
    }

    #[test]
    fn baseline_values() {
        let b = solve_bgp_monetary(&p3()).unwrap();
        assert!(rel(b.gross_r, 0.708_442_226_135_225_5) < 1e-12);
        assert!(rel(b.phi_star, 1.987_412_664_483_360_7) < 1e-12);
        assert!(rel(b.gross_growth, 1.062_663_339_202_838_4) < 1e-12);
        assert!(rel(b.credit_gdp, 1.892_559_498_362_520_2) < 1e-12);
        assert_eq!(b.other_root, 0.0);
        assert!(b.residual < 1e-14);
        assert!(b.ordering.holds());
    }

    #[test]
    fn growth_matches_open_formula_at_solved_rate() {
        let p = p3().with_epsilon(0.3);
        let b = solve_bgp_monetary(&p).unwrap();
        let g = p.productivity()
            * b.returns.capital_leverage
            * (b.income - b.returns.land_downpayment * b.phi_star);
        assert!(rel(g, b.gross_growth) < 1e-12);
        let s = p.dividend_ratio();
        assert!(rel(b.returns.rx / (1.0 + s / b.phi_star), b.gross_growth) < 1e-12);
        assert!(b.other_root < 0.0);
        assert!(b.residual < 1e-12);
    }

    #[test]
    fn no_money_growth_equates_rates() {
        let p = ScenarioParams {
            gross_mu: Some(1.0),
            theta: 0.5,
            ..p3()
        };
        let b = solve_bgp_monetary(&p).unwrap();
        assert_eq!(b.gross_growth, b.gross_r);
    }

    #[test]
    fn landless_benchmark() {
        let l = solve_landless(&p3()).unwrap();
        assert!(rel(l.gross_r, 1.521_605_840_353_298_8) < 1e-12);
        assert!(rel(l.gross_growth, 2.282_408_760_529_948) < 1e-12);
        // growth formula at r*
        let lr = LeveragedReturns::at(p3().capital_return(), 0.2, 0.6, l.gross_r).unwrap();
        let g = 0.4 * 0.67 * p3().productivity() * lr.capital_leverage;
        assert!(rel(g, l.gross_growth) < 1e-10);
        let faster = solve_landless(&p3().with(crate::params::Param::Mu, 0.6)).unwrap();
        assert!(faster.gross_growth > l.gross_growth);
        let no_theta = ScenarioParams { theta: 0.0, ..p3() };
        let g1 = solve_landless(&no_theta).unwrap().gross_growth;
        let g2 = solve_landless(&no_theta.with(crate::params::Param::Mu, 2.0))
            .unwrap()
            .gross_growth;
        assert!(rel(g1, g2) < 1e-14);
    }

    #[test]
    fn money_balances_are_linear_in_e() {
        let b = solve_bgp_monetary(&p3()).unwrap();
        let at = |e: f64| {
            let p = ScenarioParams { e: Some(e), ..p3() };
            money_price_coefficient(&p, &b).unwrap()
        };
        let m0 = at(b.min_e);
        assert!(m0.coefficient.unwrap().abs() < 1e-12);
        let m1 = at(b.min_e + 1.0);
        assert!((m1.coefficient.unwrap() - 0.6 * 15f64.powf(0.33)).abs() < 1e-12);
        assert!(at(2.0 * b.min_e).coefficient.unwrap() > 0.0);
        assert!(b.min_e > 0.0);
    }

    #[test]
    fn no_collateral_no_credit() {
        let p = ScenarioParams {
            theta: 0.0,
            theta_x: 0.0,
            eta: 0.6,
            ..p3()
        };
        let b = solve_bgp_monetary(&p).unwrap();
        assert_eq!(credit_gdp(&p, &b).unwrap(), 0.0);
    }

    #[test]
    fn violated_a4_is_reported() {
        let p = ScenarioParams {
            gross_mu: Some(1.7),
            ..p3()
        };
        assert!(matches!(
            solve_bgp_monetary(&p),
            Err(ModelError::AssumptionViolated(_))
        ));
    }
}
