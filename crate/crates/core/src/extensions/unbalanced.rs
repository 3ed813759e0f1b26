//! Imperfect spillovers: land rents grow at an exogenous rate d instead of
//! with capital, so the dividend share n = D/(A·K) becomes a state variable.
//!
//! φ' = (Rˣ·φ − (1+d)·n)/G(φ),  n' = (1+d)·n/G(φ).
//!
//! The steady state (φ**, 0) is a saddle: n is predetermined and φ jumps.
//! Paths are computed by shooting at every date: φ_t is the value of φ that
//! neither explodes past φ̄ nor collapses, given n_t.

use crate::assumptions::{check_assumptions, AssumptionId};
use crate::error::{ModelError, Result};
use crate::fd::{det, jacobian2, trace, Mat2};
use crate::open::OpenModel;
use crate::params::{Economy, ScenarioParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnbalancedState {
    pub phi: f64,
    /// Dividend share D/(A·K).
    pub n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnbalancedPath {
    /// States for t = 0..=periods.
    pub path: Vec<UnbalancedState>,
    /// Gross growth from t to t+1.
    pub growth: Vec<f64>,
    pub phi0: f64,
    pub phi_double_star: f64,
    pub rx: f64,
    pub converged: bool,
}

impl UnbalancedPath {
    /// Land price over fundamental value at each date, φ(Rˣ−1−d)/((1+d)n).
    pub fn price_over_value(&self, d: f64) -> Vec<f64> {
        self.path
            .iter()
            .map(|s| s.phi * (self.rx - 1.0 - d) / ((1.0 + d) * s.n))
            .collect()
    }
}

fn require(params: &ScenarioParams, d: f64) -> Result<(ScenarioParams, OpenModel)> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(ModelError::InvalidArgument(format!("d = {d} must be >= 0")));
    }
    let p = ScenarioParams {
        d: Some(d),
        epsilon: 0.0,
        ..params.clone()
    };
    p.gross_r()?;
    let rep = check_assumptions(&p, Economy::Open, None);
    let needed = [AssumptionId::A1, AssumptionId::A2, AssumptionId::A5];
    if !needed
        .iter()
        .all(|id| rep.get(*id).is_some_and(|r| r.holds))
    {
        return Err(ModelError::AssumptionViolated(rep));
    }
    let m = OpenModel::new(&p)?;
    Ok((p, m))
}

/// φ** = (c·inc − Rˣ)/(c·dp), the land ratio once rents have become negligible.
pub fn phi_double_star(params: &ScenarioParams) -> Result<f64> {
    let m = OpenModel::new(&params.with_epsilon(0.0))?;
    let c = m.growth_scale();
    Ok((c * m.income - m.returns.rx) / (c * m.returns.land_downpayment))
}

fn step(m: &OpenModel, d: f64, s: UnbalancedState) -> (UnbalancedState, f64) {
    let g = m.growth(s.phi);
    let next = UnbalancedState {
        phi: (m.returns.rx * s.phi - (1.0 + d) * s.n) / g,
        n: (1.0 + d) * s.n / g,
    };
    (next, g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fate {
    High,
    Low,
    Undecided,
}

const MAX_STEPS: usize = 100_000;

fn fate(m: &OpenModel, d: f64, phi0: f64, n0: f64, phi_ss: f64) -> Fate {
    let bar = m.phi_bar();
    let mut s = UnbalancedState { phi: phi0, n: n0 };
    for _ in 0..MAX_STEPS {
        if s.phi >= bar {
            return Fate::High;
        }
        if s.phi < 1e-3 * phi_ss {
            return Fate::Low;
        }
        s = step(m, d, s).0;
        if !s.phi.is_finite() {
            return Fate::High;
        }
    }
    Fate::Undecided
}

/// The jump value of φ consistent with convergence, given the dividend share.
fn shoot(m: &OpenModel, d: f64, n: f64, phi_ss: f64) -> Result<f64> {
    let bar = m.phi_bar();
    let mut lo = 1e-3 * phi_ss;
    let mut hi = bar;
    if fate(m, d, lo, n, phi_ss) != Fate::Low {
        return Err(ModelError::ShootingFailed(format!(
            "lower end of the bracket does not collapse (n = {n})"
        )));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        match fate(m, d, mid, n, phi_ss) {
            Fate::High => hi = mid,
            Fate::Low => lo = mid,
            Fate::Undecided => return Ok(mid),
        }
    }
}

/// Saddle path from the dividend share `n0`, for t = 0..=periods.
pub fn unbalanced_path(
    params: &ScenarioParams,
    d: f64,
    n0: f64,
    periods: usize,
) -> Result<UnbalancedPath> {
    if !(n0.is_finite() && n0 >= 0.0) {
        return Err(ModelError::InvalidArgument(format!(
            "n0 = {n0} must be >= 0"
        )));
    }
    if periods < 1 {
        return Err(ModelError::InvalidArgument(
            "need at least one period".into(),
        ));
    }
    let (p, m) = require(params, d)?;
    let phi_ss = phi_double_star(&p)?;
    let mut path = Vec::with_capacity(periods + 1);
    let mut growth = Vec::with_capacity(periods + 1);
    let mut n = n0;
    for _ in 0..=periods {
        let phi = if n == 0.0 {
            phi_ss
        } else {
            shoot(&m, d, n, phi_ss)?
        };
        let state = UnbalancedState { phi, n };
        let (next, g) = step(&m, d, state);
        path.push(state);
        growth.push(g);
        n = next.n;
    }
    let dist: Vec<f64> = path.iter().map(|s| (s.phi - phi_ss).abs() + s.n).collect();
    let window = &dist[periods - periods / 4..];
    let converged = window
        .iter()
        .all(|x| *x <= window[0] * (1.0 + 1e-9) + 1e-15)
        && dist[periods] < 1e-6 * phi_ss.max(1.0);
    Ok(UnbalancedPath {
        phi0: path[0].phi,
        path,
        growth,
        phi_double_star: phi_ss,
        rx: m.returns.rx,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Closed-form Jacobian at (φ**, 0).
    pub jacobian: Mat2,
    /// Central-difference Jacobian of the map at the same point.
    pub numerical: Mat2,
    pub trace: f64,
    pub det: f64,
    pub locally_determinate: bool,
}

/// Linearisation at (φ**, 0). Determinate iff 0 < det < trace − 1.
pub fn stability_matrix(params: &ScenarioParams, d: f64) -> Result<StabilityReport> {
    let (p, m) = require(params, d)?;
    let phi_ss = phi_double_star(&p)?;
    let rx = m.returns.rx;
    let f_phi = m.growth_scale() * m.income / rx;
    let h_n = (1.0 + d) / rx;
    let jacobian = [[f_phi, -(1.0 + d) / rx], [0.0, h_n]];
    let numerical = jacobian2::<_, ModelError>(
        |v| {
            let (s, _) = step(&m, d, UnbalancedState { phi: v[0], n: v[1] });
            Ok([s.phi, s.n])
        },
        [phi_ss, 0.0],
        1e-6,
    )?;
    let tr = trace(&jacobian);
    let dt = det(&jacobian);
    Ok(StabilityReport {
        jacobian,
        numerical,
        trace: tr,
        det: dt,
        locally_determinate: dt > 0.0 && dt < tr - 1.0,
    })
}
