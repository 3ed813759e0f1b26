//! Splits a change in 1+g* into the capital-leverage channel, the land
//! down-payment channel and the equilibrium response of φ*.
//!
//! The channels are substituted in that order; a different order would
//! distribute cross terms differently.

use super::solve_bgp;
use crate::error::Result;
use crate::params::ScenarioParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    /// New capital leverage (and any change in A or income), old down payment and φ*.
    pub pe1: f64,
    /// Additionally the new down-payment factor.
    pub pe2: f64,
    /// Additionally the new φ*.
    pub ge: f64,
    pub total: f64,
}

pub fn decompose(base: &ScenarioParams, new: &ScenarioParams) -> Result<Decomposition> {
    let b0 = solve_bgp(base)?;
    let b1 = solve_bgp(new)?;
    let scale0 = base.productivity() * b0.returns.capital_leverage;
    let scale1 = new.productivity() * b1.returns.capital_leverage;
    let g0 = scale0 * (b0.income - b0.returns.land_downpayment * b0.phi_star);
    let step1 = scale1 * (b1.income - b0.returns.land_downpayment * b0.phi_star);
    let step2 = scale1 * (b1.income - b1.returns.land_downpayment * b0.phi_star);
    let total = b1.gross_growth - b0.gross_growth;
    let pe1 = step1 - g0;
    let pe2 = step2 - step1;
    Ok(Decomposition {
        pe1,
        pe2,
        ge: total - pe1 - pe2,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_change_is_zero() {
        let p = ScenarioParams::open_baseline().with_epsilon(0.01);
        let d = decompose(&p, &p).unwrap();
        assert_eq!((d.pe1, d.pe2, d.ge, d.total), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn tighter_land_collateral_crowds_out() {
        let base = ScenarioParams::open_baseline().with_epsilon(1e-6);
        let new = ScenarioParams {
            theta_x: 0.62,
            ..base.clone()
        };
        let d = decompose(&base, &new).unwrap();
        assert_eq!(d.pe1, 0.0);
        assert!(d.pe2 > 0.0);
        assert!(d.ge < 0.0);
        assert!(d.total < 0.0);
        assert!((d.pe1 + d.pe2 + d.ge - d.total).abs() <= 1e-14 * d.total.abs().max(1.0));
    }

    #[test]
    fn more_capital_collateral_raises_growth() {
        let base = ScenarioParams::open_baseline();
        let new = ScenarioParams {
            theta: 0.51,
            ..base.clone()
        };
        let d = decompose(&base, &new).unwrap();
        assert!(d.total > 0.0);
        assert!(d.pe1 > 0.0);
    }
}
