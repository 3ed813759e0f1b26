//! Finite-difference comparative statics of balanced-path quantities.

mod suite;
mod sweep;

pub use suite::{proposition_suite, PropositionCheck, PropositionReport, SUITE_EPSILON};
pub use sweep::{
    critical_epsilon, default_grid, feasible_ceiling, linspace, open_analog, sign_map, Sign,
    SweepRecord,
};

use std::fmt;

use crate::error::{ModelError, Result};
use crate::fd::{central_richardson, forward_richardson, Richardson};
use crate::monetary::{solve_bgp_monetary, solve_landless};
use crate::open::solve_bgp_unfloored;
use crate::params::{Economy, Param, ScenarioParams};

/// Balanced-path quantity being differentiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// 1+g*.
    Growth,
    Phi,
    /// 1+r* (monetary only).
    Rate,
    /// Credit over GDP (monetary only).
    CreditGdp,
    /// 1+g* of the landless monetary benchmark.
    LandlessGrowth,
    /// 1+r* of the landless monetary benchmark.
    LandlessRate,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Growth => "growth",
            Target::Phi => "phi",
            Target::Rate => "rate",
            Target::CreditGdp => "credit_gdp",
            Target::LandlessGrowth => "landless_growth",
            Target::LandlessRate => "landless_rate",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of `target` on the balanced path. The open economy is evaluated
/// without the 1−δ floor so that derivatives stay smooth up to the boundary;
/// feasibility is judged separately.
pub fn evaluate(params: &ScenarioParams, economy: Economy, target: Target) -> Result<f64> {
    match (economy, target) {
        (Economy::Open, Target::Growth) => Ok(solve_bgp_unfloored(params)?.gross_growth),
        (Economy::Open, Target::Phi) => Ok(solve_bgp_unfloored(params)?.phi_star),
        (Economy::Monetary, Target::Growth) => Ok(solve_bgp_monetary(params)?.gross_growth),
        (Economy::Monetary, Target::Phi) => Ok(solve_bgp_monetary(params)?.phi_star),
        (Economy::Monetary, Target::Rate) => Ok(solve_bgp_monetary(params)?.gross_r),
        (Economy::Monetary, Target::CreditGdp) => Ok(solve_bgp_monetary(params)?.credit_gdp),
        (Economy::Monetary, Target::LandlessGrowth) => Ok(solve_landless(params)?.gross_growth),
        (Economy::Monetary, Target::LandlessRate) => Ok(solve_landless(params)?.gross_r),
        (Economy::Open, t) => Err(ModelError::InvalidArgument(format!(
            "target `{t}` is not defined for the open economy"
        ))),
    }
}

/// Derivative estimate and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub raw_h: f64,
    pub raw_half: f64,
    pub h: f64,
    /// A one-sided difference was needed near a boundary.
    pub one_sided: bool,
}

impl From<(Richardson, bool)> for Derivative {
    fn from((r, one_sided): (Richardson, bool)) -> Self {
        Derivative {
            value: r.value,
            raw_h: r.raw_h,
            raw_half: r.raw_half,
            h: r.h,
            one_sided,
        }
    }
}

/// Smallest step tried before giving up.
pub const MIN_STEP: f64 = 1e-10;

/// d target / d wrt by a Richardson-extrapolated central difference.
///
/// The default step is 1e-5·max(1, |x|). When a perturbed point leaves the
/// region where the balanced path exists the step shrinks tenfold, down to
/// 1e-10; after that one-sided differences are tried in both directions.
pub fn derivative_of(
    params: &ScenarioParams,
    economy: Economy,
    target: Target,
    wrt: Param,
    h: Option<f64>,
) -> Result<Derivative> {
    if !wrt.applies_to(economy) {
        return Err(ModelError::InvalidArgument(format!(
            "`{wrt}` is not a parameter of the {economy} economy"
        )));
    }
    let x = wrt.get(params);
    if !x.is_finite() {
        return Err(ModelError::MissingParameter(wrt.name()));
    }
    // surface configuration errors before any stepping
    evaluate(params, economy, target)?;
    let f = |v: f64| evaluate(&params.with(wrt, v), economy, target).ok();
    let h0 = h.unwrap_or(1e-5 * x.abs().max(1.0));
    let steps =
        || std::iter::successors(Some(h0), |h| Some(h / 10.0)).take_while(|h| *h >= MIN_STEP);
    for step in steps() {
        if let Some(r) = central_richardson(f, x, step) {
            return Ok((r, false).into());
        }
    }
    for sign in [1.0, -1.0] {
        for step in steps() {
            if let Some(r) = forward_richardson(f, x, sign * step) {
                return Ok((r, true).into());
            }
        }
    }
    Err(ModelError::RegionTooNarrow {
        param: wrt.name(),
        at: x,
        min_step: MIN_STEP,
    })
}

/// d(1+g*)/d wrt with the default step.
pub fn derivative(params: &ScenarioParams, economy: Economy, wrt: Param) -> Result<f64> {
    Ok(derivative_of(params, economy, Target::Growth, wrt, None)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> ScenarioParams {
        ScenarioParams::open_baseline().with_epsilon(1e-6)
    }

    #[test]
    fn open_signs_at_small_epsilon() {
        assert!(derivative(&p2(), Economy::Open, Param::ThetaX).unwrap() < 0.0);
        assert!(derivative(&p2(), Economy::Open, Param::Theta).unwrap() > 0.0);
        assert!(derivative(&p2(), Economy::Open, Param::R).unwrap() > 0.0);
    }

    #[test]
    fn matches_closed_form_derivative_at_zero_epsilon() {
        // With unproductive land 1+g* = Rˣ*, whose θˣ-derivative is
        // −λ(θλ/R − 1)... evaluate it by hand: d/dθˣ [λ/(1−θˣ+θˣλ/R)].
        let p = ScenarioParams::open_baseline();
        let c = crate::params::derive_constants(&p, Economy::Open).unwrap();
        let lambda = c.lambda().unwrap();
        let den = 1.0 - 0.6 + 0.6 * lambda / 1.55;
        let exact = -lambda * (lambda / 1.55 - 1.0) / (den * den);
        let d = derivative_of(&p, Economy::Open, Target::Growth, Param::ThetaX, None).unwrap();
        assert!((d.value - exact).abs() < 1e-8 * exact.abs());
        assert!((d.value - d.raw_half).abs() <= 10.0 * (d.raw_half - d.raw_h).abs());
    }

    #[test]
    fn boundary_forces_one_sided_difference() {
        let p = ScenarioParams::open_baseline();
        let d = derivative_of(&p, Economy::Open, Target::Phi, Param::Epsilon, None).unwrap();
        assert!(d.one_sided);
        assert!(d.value > 0.0);
    }

    #[test]
    fn wrong_parameter_for_economy() {
        assert!(matches!(
            derivative(&p2(), Economy::Open, Param::Mu),
            Err(ModelError::InvalidArgument(_))
        ));
        let p3 = ScenarioParams::monetary_baseline();
        assert!(matches!(
            derivative(&p3, Economy::Monetary, Param::R),
            Err(ModelError::InvalidArgument(_))
        ));
    }

    #[test]
    fn monetary_money_growth_lowers_growth() {
        let p3 = ScenarioParams::monetary_baseline().with_epsilon(1e-6);
        assert!(derivative(&p3, Economy::Monetary, Param::Mu).unwrap() < 0.0);
    }
}
