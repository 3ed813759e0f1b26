//! Sign maps over land productivity and the critical ε where a sign flips.

use std::fmt;

use rayon::prelude::*;

use super::{derivative_of, Target};
use crate::error::{ModelError, Result};
use crate::monetary::solve_bgp_monetary;
use crate::open::{epsilon_bar, solve_bgp_unfloored};
use crate::params::{Economy, Param, ScenarioParams};
use crate::roots::bisect_predicate;
use crate::EPSILON_CEILING;

/// Tolerance below which a derivative counts as zero.
pub const SIGN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
    /// Derivative could not be computed.
    Undefined,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x.is_nan() {
            Sign::Undefined
        } else if x > SIGN_TOL {
            Sign::Pos
        } else if x < -SIGN_TOL {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Neg => "neg",
            Sign::Zero => "zero",
            Sign::Pos => "pos",
            Sign::Undefined => "nan",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One grid point of a sign map.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub epsilon: f64,
    /// θ, θˣ and the active rate (net), in that order.
    pub param_values: Vec<(&'static str, f64)>,
    /// 1+g*.
    pub gross_growth: f64,
    pub phi_star: f64,
    /// Safe rate 1+r: given in the open economy, solved in the monetary one.
    pub gross_r: f64,
    pub derivative: f64,
    pub derivative_target: Target,
    pub wrt: Param,
    pub sign: Sign,
    pub feasible: bool,
    /// `ok`, `below_depreciation_floor`, or the code of the solver error.
    pub reason: String,
}

fn level(params: &ScenarioParams, economy: Economy) -> Result<(f64, f64, f64)> {
    match economy {
        Economy::Open => {
            let b = solve_bgp_unfloored(params)?;
            Ok((b.gross_growth, b.phi_star, params.gross_r()?))
        }
        Economy::Monetary => {
            let b = solve_bgp_monetary(params)?;
            Ok((b.gross_growth, b.phi_star, b.gross_r))
        }
    }
}

fn record(params: &ScenarioParams, economy: Economy, wrt: Param, eps: f64) -> SweepRecord {
    let p = params.with_epsilon(eps);
    let rate = match economy {
        Economy::Open => ("r", Param::R.get(&p)),
        Economy::Monetary => ("mu", Param::Mu.get(&p)),
    };
    let mut rec = SweepRecord {
        epsilon: eps,
        param_values: vec![("theta", p.theta), ("theta_x", p.theta_x), rate],
        gross_growth: f64::NAN,
        phi_star: f64::NAN,
        gross_r: f64::NAN,
        derivative: f64::NAN,
        derivative_target: Target::Growth,
        wrt,
        sign: Sign::Undefined,
        feasible: false,
        reason: String::new(),
    };
    match level(&p, economy) {
        Ok((g, phi, r)) => {
            rec.gross_growth = g;
            rec.phi_star = phi;
            rec.gross_r = r;
        }
        Err(e) => {
            rec.reason = e.code().to_string();
            return rec;
        }
    }
    match derivative_of(&p, economy, Target::Growth, wrt, None) {
        Ok(d) => {
            rec.derivative = d.value;
            rec.sign = Sign::of(d.value);
        }
        Err(e) => {
            rec.reason = e.code().to_string();
            return rec;
        }
    }
    if rec.gross_growth < 1.0 - p.delta {
        rec.reason = "below_depreciation_floor".into();
    } else {
        rec.feasible = true;
        rec.reason = "ok".into();
    }
    rec
}

/// d(1+g*)/d`wrt` at every ε of the grid, computed in parallel and returned
/// sorted by ε. Infeasible points are kept and carry a reason.
pub fn sign_map(
    params: &ScenarioParams,
    economy: Economy,
    wrt: Param,
    eps_grid: &[f64],
) -> Vec<SweepRecord> {
    let mut out: Vec<SweepRecord> = eps_grid
        .par_iter()
        .map(|&eps| record(params, economy, wrt, eps))
        .collect();
    out.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
    out
}

fn is_feasible(params: &ScenarioParams, economy: Economy, eps: f64) -> bool {
    let p = params.with_epsilon(eps);
    match level(&p, economy) {
        Ok((g, _, _)) => g >= 1.0 - p.delta,
        Err(_) => false,
    }
}

/// Largest ε (up to the search ceiling) at which the balanced path exists
/// with 1+g* ≥ 1−δ. +∞ means feasible all the way to the ceiling.
pub fn feasible_ceiling(params: &ScenarioParams, economy: Economy) -> Result<f64> {
    match economy {
        Economy::Open => epsilon_bar(params),
        Economy::Monetary => {
            if !is_feasible(params, economy, 0.0) {
                return Err(ModelError::NoEquilibrium(
                    "no feasible balanced path at epsilon = 0".into(),
                ));
            }
            if is_feasible(params, economy, EPSILON_CEILING) {
                return Ok(f64::INFINITY);
            }
            let (lo, _) = bisect_predicate(0.0, EPSILON_CEILING, 1e-10, |eps| {
                !is_feasible(params, economy, eps)
            });
            Ok(lo)
        }
    }
}

/// Evenly spaced grid over [0, min(0.99·ceiling, 1)].
pub fn default_grid(params: &ScenarioParams, economy: Economy, points: usize) -> Result<Vec<f64>> {
    let top = (0.99 * feasible_ceiling(params, economy)?).min(1.0);
    Ok(linspace(0.0, top, points))
}

pub fn linspace(from: f64, to: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![from],
        n => (0..n)
            .map(|i| from + (to - from) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

const CRITICAL_LOW: f64 = 1e-6;

/// ε at which d(1+g*)/d`wrt` changes sign, located by bisection to 1e-8.
///
/// The sign is compared at ε = 1e-6 and at min(10, 0.999·feasible ceiling);
/// if it is the same at both ends the result is +∞.
pub fn critical_epsilon(params: &ScenarioParams, economy: Economy, wrt: Param) -> Result<f64> {
    let hi = (0.999 * feasible_ceiling(params, economy)?).min(EPSILON_CEILING);
    let sign_at = |eps: f64| -> Result<Sign> {
        let d = derivative_of(
            &params.with_epsilon(eps),
            economy,
            Target::Growth,
            wrt,
            None,
        )?;
        Ok(Sign::of(d.value))
    };
    let s_lo = sign_at(CRITICAL_LOW)?;
    let s_hi = sign_at(hi)?;
    if s_lo == s_hi || s_lo == Sign::Zero || s_hi == Sign::Zero {
        return Ok(f64::INFINITY);
    }
    let mut failure = None;
    let (a, b) = bisect_predicate(CRITICAL_LOW, hi, 1e-8, |eps| match sign_at(eps) {
        Ok(s) => s != s_lo,
        Err(e) => {
            failure.get_or_insert(e);
            true
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(0.5 * (a + b))
}

/// Open economy facing the safe rate that the monetary economy generates
/// endogenously with unproductive land, other parameters unchanged.
pub fn open_analog(monetary: &ScenarioParams) -> Result<ScenarioParams> {
    let bgp = solve_bgp_monetary(&monetary.with_epsilon(0.0))?;
    Ok(ScenarioParams {
        gross_r: Some(bgp.gross_r),
        gross_mu: None,
        ..monetary.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_gives_empty_map() {
        assert!(sign_map(
            &ScenarioParams::open_baseline(),
            Economy::Open,
            Param::ThetaX,
            &[]
        )
        .is_empty());
    }

    #[test]
    fn records_are_sorted_and_infeasible_points_flagged() {
        let p = ScenarioParams::open_baseline();
        let map = sign_map(&p, Economy::Open, Param::ThetaX, &[4.0, 0.5, 0.001]);
        let eps: Vec<f64> = map.iter().map(|r| r.epsilon).collect();
        assert_eq!(eps, vec![0.001, 0.5, 4.0]);
        assert!(map[0].feasible && map[1].feasible);
        assert!(!map[2].feasible);
        assert_eq!(map[2].reason, "below_depreciation_floor");
        assert_eq!(map[0].sign, Sign::Neg);
    }

    #[test]
    fn theta_x_flip_in_open_economy() {
        let p = ScenarioParams::open_baseline();
        let c = critical_epsilon(&p, Economy::Open, Param::ThetaX).unwrap();
        assert!(c > 0.5 && c < 1.0, "critical epsilon {c}");
        let lower_rate = p.with(Param::R, 0.44);
        let c2 = critical_epsilon(&lower_rate, Economy::Open, Param::ThetaX).unwrap();
        assert!(c2 > c);
    }

    #[test]
    fn theta_never_flips_in_open_economy() {
        let p = ScenarioParams::open_baseline();
        assert_eq!(
            critical_epsilon(&p, Economy::Open, Param::Theta).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn analog_uses_monetary_rate() {
        let p3 = ScenarioParams::monetary_baseline();
        let a = open_analog(&p3).unwrap();
        assert!(a.gross_mu.is_none());
        assert!((a.gross_r.unwrap() - 0.708_442_226_135_225_5).abs() < 1e-12);
        // with unproductive land both economies grow at the land return
        let g = solve_bgp_unfloored(&a).unwrap().gross_growth;
        let gm = solve_bgp_monetary(&p3).unwrap().gross_growth;
        assert!((g - gm).abs() < 1e-9);
    }

    #[test]
    fn linspace_ends() {
        assert_eq!(linspace(0.0, 1.0, 1), vec![0.0]);
        let g = linspace(0.0, 1.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], 1.0);
    }
}
