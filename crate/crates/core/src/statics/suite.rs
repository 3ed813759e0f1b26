//! Sign claims of the model checked by finite differences at small ε.

use super::{derivative_of, Target};
use crate::error::Result;
use crate::monetary::solve_bgp_monetary;
use crate::params::{Economy, Param, ScenarioParams};

/// Land productivity at which the small-ε claims are evaluated.
pub const SUITE_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PropositionCheck {
    /// Short stable identifier, e.g. `open.growth.theta_x`.
    pub id: String,
    /// Human-readable statement of the claim.
    pub claim: String,
    /// The derivative or margin the claim is judged on.
    pub value: f64,
    pub pass: bool,
    /// Solver error code when the value could not be computed.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PropositionReport {
    pub checks: Vec<PropositionCheck>,
}

impl PropositionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&PropositionCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy)]
enum Expect {
    Pos,
    Neg,
    /// Sign equal to the given number's sign; zero means "no effect".
    SignOf(f64),
}

impl Expect {
    fn describe(self) -> &'static str {
        match self {
            Expect::Pos => "> 0",
            Expect::Neg => "< 0",
            Expect::SignOf(x) if x > 0.0 => "> 0",
            Expect::SignOf(x) if x < 0.0 => "< 0",
            Expect::SignOf(_) => "= 0",
        }
    }

    fn judge(self, v: f64) -> bool {
        match self {
            Expect::Pos => v > 0.0,
            Expect::Neg => v < 0.0,
            Expect::SignOf(x) if x > 0.0 => v > 0.0,
            Expect::SignOf(x) if x < 0.0 => v < 0.0,
            Expect::SignOf(_) => v.abs() <= 1e-9,
        }
    }
}

struct Suite {
    checks: Vec<PropositionCheck>,
}

impl Suite {
    fn derivative(
        &mut self,
        prefix: &str,
        params: &ScenarioParams,
        economy: Economy,
        target: Target,
        wrt: Param,
        expect: Expect,
    ) {
        let id = format!("{prefix}.{}.{}", target.name(), wrt.name());
        let claim = format!(
            "d {} / d {} {}",
            target.name(),
            wrt.name(),
            expect.describe()
        );
        let check = match derivative_of(params, economy, target, wrt, None) {
            Ok(d) => PropositionCheck {
                id,
                claim,
                value: d.value,
                pass: expect.judge(d.value),
                error: None,
            },
            Err(e) => PropositionCheck {
                id,
                claim,
                value: f64::NAN,
                pass: false,
                error: Some(e.code().to_string()),
            },
        };
        self.checks.push(check);
    }

    fn margin(&mut self, id: &str, claim: &str, value: Result<f64>) {
        let check = match value {
            Ok(v) => PropositionCheck {
                id: id.into(),
                claim: claim.into(),
                value: v,
                pass: v > 0.0,
                error: None,
            },
            Err(e) => PropositionCheck {
                id: id.into(),
                claim: claim.into(),
                value: f64::NAN,
                pass: false,
                error: Some(e.code().to_string()),
            },
        };
        self.checks.push(check);
    }
}

/// Runs every small-ε sign claim for the economies supplied.
///
/// Open economy: growth falls and φ* rises with θˣ; both rise with θ; the
/// growth effect of r has the sign of θˣ − θ while φ* falls with r; φ* rises
/// and growth falls with ε. Monetary economy: the θˣ and θ effects on growth,
/// φ* and r*; the μ effect with sign θ − θˣ on growth, positive on φ*,
/// negative on r*; the landless benchmark's positive μ effect on growth;
/// the ordering Rᶜ > 1+g* > 1+r*; credit over GDP rising in θ, θˣ and μ.
pub fn proposition_suite(
    open: Option<&ScenarioParams>,
    monetary: Option<&ScenarioParams>,
) -> PropositionReport {
    let mut s = Suite { checks: Vec::new() };
    if let Some(p) = open {
        let p = p.with_epsilon(SUITE_EPSILON);
        let e = Economy::Open;
        s.derivative("open", &p, e, Target::Growth, Param::ThetaX, Expect::Neg);
        s.derivative("open", &p, e, Target::Phi, Param::ThetaX, Expect::Pos);
        s.derivative("open", &p, e, Target::Growth, Param::Theta, Expect::Pos);
        s.derivative("open", &p, e, Target::Phi, Param::Theta, Expect::Pos);
        let gap = p.theta_x - p.theta;
        s.derivative("open", &p, e, Target::Growth, Param::R, Expect::SignOf(gap));
        s.derivative("open", &p, e, Target::Phi, Param::R, Expect::Neg);
        s.derivative("open", &p, e, Target::Phi, Param::Epsilon, Expect::Pos);
        s.derivative("open", &p, e, Target::Growth, Param::Epsilon, Expect::Neg);
    }
    if let Some(p) = monetary {
        let p = p.with_epsilon(SUITE_EPSILON);
        let e = Economy::Monetary;
        for (target, expect) in [
            (Target::Growth, Expect::Neg),
            (Target::Phi, Expect::Pos),
            (Target::Rate, Expect::Neg),
        ] {
            s.derivative("monetary", &p, e, target, Param::ThetaX, expect);
        }
        for target in [Target::Growth, Target::Phi, Target::Rate] {
            s.derivative("monetary", &p, e, target, Param::Theta, Expect::Pos);
        }
        let gap = p.theta - p.theta_x;
        s.derivative(
            "monetary",
            &p,
            e,
            Target::Growth,
            Param::Mu,
            Expect::SignOf(gap),
        );
        s.derivative("monetary", &p, e, Target::Phi, Param::Mu, Expect::Pos);
        s.derivative("monetary", &p, e, Target::Rate, Param::Mu, Expect::Neg);
        let tobin = if p.theta > 0.0 {
            Expect::Pos
        } else {
            Expect::SignOf(0.0)
        };
        s.derivative("monetary", &p, e, Target::LandlessGrowth, Param::Mu, tobin);
        s.derivative(
            "monetary",
            &p,
            e,
            Target::LandlessRate,
            Param::Mu,
            Expect::Neg,
        );
        let bgp = solve_bgp_monetary(&p);
        s.margin(
            "monetary.ordering.rc_over_g",
            "Rc > 1+g*",
            bgp.as_ref()
                .map(|b| b.ordering.rc - b.ordering.g)
                .map_err(Clone::clone),
        );
        s.margin(
            "monetary.ordering.g_over_r",
            "1+g* > 1+r*",
            bgp.as_ref()
                .map(|b| b.ordering.g - b.ordering.r)
                .map_err(Clone::clone),
        );
        for wrt in [Param::Theta, Param::ThetaX, Param::Mu] {
            s.derivative("monetary", &p, e, Target::CreditGdp, wrt, Expect::Pos);
        }
    }
    PropositionReport { checks: s.checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baselines_pass_every_claim() {
        let rep = proposition_suite(
            Some(&ScenarioParams::open_baseline()),
            Some(&ScenarioParams::monetary_baseline()),
        );
        for c in &rep.checks {
            assert!(c.pass, "{} failed: {} (value {})", c.id, c.claim, c.value);
        }
        assert_eq!(rep.checks.len(), 8 + 16);
    }

    #[test]
    fn rate_effect_flips_when_land_collateral_is_tighter() {
        // θˣ < θ with A1 intact
        let p = ScenarioParams {
            theta: 0.5,
            theta_x: 0.4,
            ..ScenarioParams::open_baseline()
        };
        let rep = proposition_suite(Some(&p), None);
        let c = rep.get("open.growth.r").unwrap();
        assert!(c.value < 0.0 && c.pass);
    }

    #[test]
    fn broken_parameters_fail_instead_of_panicking() {
        let p = ScenarioParams {
            theta: 0.56,
            ..ScenarioParams::open_baseline()
        };
        let rep = proposition_suite(Some(&p), None);
        assert!(!rep.all_pass());
        assert!(rep
            .checks
            .iter()
            .all(|c| c.error.as_deref() == Some("assumption_violated")));
    }
}
