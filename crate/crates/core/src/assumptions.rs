//! Parameter restrictions under which the balanced growth paths exist.
//!
//! Every record carries `slack = rhs - lhs`; a restriction holds iff the slack
//! is strictly positive. Nothing here fails: callers decide what to do with a
//! violated record.

use std::fmt;

use crate::extensions::entrepreneur_income;
use crate::params::{Economy, LeveragedReturns, ScenarioParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AssumptionId {
    /// θ < (1+r)/Rᶜ: capital leverage is finite.
    A1,
    /// Rˣ* below the growth factor at φ = 0, so that φ* > 0.
    A2,
    /// θˣ(1+μ)(1+εa^α/φ*) < 1.
    A3,
    /// Monetary counterpart of A2.
    A4,
    /// Rˣ > 1+d: land rents grow slower than the land return.
    A5,
}

impl AssumptionId {
    pub fn as_str(self) -> &'static str {
        match self {
            AssumptionId::A1 => "A1",
            AssumptionId::A2 => "A2",
            AssumptionId::A3 => "A3",
            AssumptionId::A4 => "A4",
            AssumptionId::A5 => "A5",
        }
    }
}

impl fmt::Display for AssumptionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionRecord {
    pub id: AssumptionId,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl AssumptionRecord {
    /// Record for the strict inequality `lhs < rhs`.
    pub fn less_than(id: AssumptionId, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        AssumptionRecord {
            id,
            holds: slack > 0.0,
            lhs,
            rhs,
            slack,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AssumptionReport {
    pub records: Vec<AssumptionRecord>,
}

impl AssumptionReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    pub fn get(&self, id: AssumptionId) -> Option<&AssumptionRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failed_ids(&self) -> Vec<String> {
        self.records
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.id.to_string())
            .collect()
    }

    pub fn extend(&mut self, other: AssumptionReport) {
        self.records.extend(other.records);
    }
}

/// Evaluates the restrictions that apply to `economy`.
///
/// Open economy: A1, then A2 when A1 holds (A2 needs finite leverage), and A5
/// when `d` is set. Monetary economy: A4 always; A3 when ε = 0 or when
/// `phi_star` is supplied. Records whose inputs are missing are omitted.
pub fn check_assumptions(
    params: &ScenarioParams,
    economy: Economy,
    phi_star: Option<f64>,
) -> AssumptionReport {
    let mut records = Vec::new();
    let rc = params.capital_return();
    let income = entrepreneur_income(params).ok();
    match economy {
        Economy::Open => {
            let Some(gross_r) = params.gross_r else {
                return AssumptionReport { records };
            };
            let a1 = AssumptionRecord::less_than(AssumptionId::A1, params.theta, gross_r / rc);
            records.push(a1);
            if a1.holds {
                if let Ok(lr) = LeveragedReturns::at(rc, params.theta, params.theta_x, gross_r) {
                    if let Some(inc) = income {
                        let growth_at_zero = params.productivity() * lr.capital_leverage * inc;
                        records.push(AssumptionRecord::less_than(
                            AssumptionId::A2,
                            lr.rx,
                            growth_at_zero,
                        ));
                    }
                    if let Some(d) = params.d {
                        records.push(AssumptionRecord::less_than(
                            AssumptionId::A5,
                            1.0 + d,
                            lr.rx,
                        ));
                    }
                }
            }
        }
        Economy::Monetary => {
            let Some(gross_mu) = params.gross_mu else {
                return AssumptionReport { records };
            };
            let c_theta = params.theta_x * gross_mu;
            let k = 1.0 - c_theta;
            let s_eps = params.dividend_ratio();
            let a3_lhs = if s_eps == 0.0 {
                Some(c_theta)
            } else {
                phi_star.map(|phi| c_theta * (1.0 + s_eps / phi))
            };
            if let Some(lhs) = a3_lhs {
                records.push(AssumptionRecord::less_than(AssumptionId::A3, lhs, 1.0));
            }
            if let Some(inc) = income {
                let b_over_a =
                    rc * (1.0 - params.theta) / (params.productivity() * (1.0 - params.theta_x));
                let rhs = if k > 0.0 { inc / k } else { f64::NEG_INFINITY };
                // The restriction reads inc/k > B/A, so B/A plays the role of lhs.
                records.push(AssumptionRecord::less_than(AssumptionId::A4, b_over_a, rhs));
            }
        }
    }
    AssumptionReport { records }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_baseline_satisfies_a1_a2() {
        let rep = check_assumptions(&ScenarioParams::open_baseline(), Economy::Open, None);
        let a1 = rep.get(AssumptionId::A1).unwrap();
        assert!(a1.holds);
        assert!((a1.rhs - 0.548_609_126_104_546_9).abs() < 1e-12);
        let a2 = rep.get(AssumptionId::A2).unwrap();
        assert!(a2.holds);
        assert!((a2.rhs - 18.563_555_124_790_543).abs() < 1e-9);
        assert!(rep.get(AssumptionId::A5).is_none());
    }

    #[test]
    fn a1_boundary_fails_with_zero_slack() {
        let mut p = ScenarioParams::open_baseline();
        p.theta = 1.55 / p.capital_return();
        let rep = check_assumptions(&p, Economy::Open, None);
        let a1 = rep.get(AssumptionId::A1).unwrap();
        assert!(!a1.holds);
        assert_eq!(a1.slack, 0.0);
        assert!(rep.get(AssumptionId::A2).is_none());
        assert_eq!(rep.failed_ids(), vec!["A1".to_string()]);
    }

    #[test]
    fn monetary_baseline_satisfies_a3_a4() {
        let rep = check_assumptions(
            &ScenarioParams::monetary_baseline(),
            Economy::Monetary,
            None,
        );
        let a3 = rep.get(AssumptionId::A3).unwrap();
        assert!(a3.holds && (a3.lhs - 0.9).abs() < 1e-15);
        let a4 = rep.get(AssumptionId::A4).unwrap();
        assert!(a4.holds);
        assert!((a4.rhs - 2.68).abs() < 1e-12);
        assert!((a4.lhs - 0.6926).abs() < 1e-4);
    }

    #[test]
    fn a3_needs_phi_when_land_is_productive() {
        let p = ScenarioParams::monetary_baseline().with_epsilon(0.1);
        let rep = check_assumptions(&p, Economy::Monetary, None);
        assert!(rep.get(AssumptionId::A3).is_none());
        let rep = check_assumptions(&p, Economy::Monetary, Some(2.0));
        assert!(rep.get(AssumptionId::A3).is_some());
    }

    #[test]
    fn a5_compares_rent_growth() {
        let mut p = ScenarioParams::open_baseline();
        p.d = Some(0.02);
        let rep = check_assumptions(&p, Economy::Open, None);
        assert!(rep.get(AssumptionId::A5).unwrap().holds);
        p.d = Some(2.0);
        let rep = check_assumptions(&p, Economy::Open, None);
        assert!(!rep.get(AssumptionId::A5).unwrap().holds);
    }
}
