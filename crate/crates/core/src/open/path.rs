//! Forward simulation and the one-period land-productivity shock.

use std::str::FromStr;

use super::{solve_bgp, OpenModel};
use crate::error::{ModelError, Result};
use crate::params::ScenarioParams;
use crate::roots::bisect;

/// Aggregates at one date.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathState {
    pub t: usize,
    pub k: f64,
    pub p: f64,
    pub phi: f64,
    /// Net growth from t to t+1.
    pub g: f64,
    /// Wage bill (1−α)A·K.
    pub w: f64,
    /// Output of both sectors, A·K plus the rent paid at t.
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiStart {
    /// Land price jumps onto the balanced path.
    JumpToBgp,
    Explicit(f64),
}

fn state(
    params: &ScenarioParams,
    t: usize,
    k: f64,
    phi: f64,
    gross: f64,
    eps_rent: f64,
) -> PathState {
    let ak = params.productivity() * k;
    PathState {
        t,
        k,
        p: phi * ak,
        phi,
        g: gross - 1.0,
        w: (1.0 - params.alpha) * ak,
        y: ak + eps_rent * params.a * k,
    }
}

/// Path for t = 0..=periods.
///
/// An explicit φ0 other than φ* is iterated as is; such paths leave the
/// admissible region, which is reported as a domain error naming the period.
pub fn simulate(
    params: &ScenarioParams,
    k0: f64,
    periods: usize,
    start: PhiStart,
) -> Result<Vec<PathState>> {
    if !(k0 > 0.0 && k0.is_finite()) {
        return Err(ModelError::InvalidArgument(format!(
            "K0 = {k0} must be positive"
        )));
    }
    if periods < 1 {
        return Err(ModelError::InvalidArgument(
            "need at least one period".into(),
        ));
    }
    let m = OpenModel::new(params)?;
    let mut out = Vec::with_capacity(periods + 1);
    let mut k = k0;
    match start {
        PhiStart::JumpToBgp => {
            let bgp = solve_bgp(params)?;
            for t in 0..=periods {
                out.push(state(
                    params,
                    t,
                    k,
                    bgp.phi_star,
                    bgp.gross_growth,
                    params.epsilon,
                ));
                k *= bgp.gross_growth;
            }
        }
        PhiStart::Explicit(phi0) => {
            let bar = m.phi_bar();
            let mut phi = phi0;
            for t in 0..=periods {
                if !(phi >= 0.0 && phi < bar) {
                    return Err(ModelError::domain(format!(
                        "explicit path leaves [0, phi_bar) at t = {t}: phi = {phi}, phi_bar = {bar}"
                    )));
                }
                let gross = m.growth(phi);
                out.push(state(params, t, k, phi, gross, params.epsilon));
                k *= gross;
                phi = m.map(phi);
            }
        }
    }
    Ok(out)
}

/// How agents read a land-productivity shock that lasts one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Belief {
    /// Buyers at the shock date expect the high productivity to persist and
    /// are surprised by the reversion.
    BelievedPermanent,
    /// Buyers know the shock lasts one period.
    AnticipatedTemporary,
}

impl FromStr for Belief {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "believed_permanent" => Ok(Belief::BelievedPermanent),
            "anticipated_temporary" => Ok(Belief::AnticipatedTemporary),
            other => Err(ModelError::InvalidArgument(format!(
                "unknown belief `{other}` (expected believed_permanent or anticipated_temporary)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShockPaths {
    pub baseline: Vec<PathState>,
    pub shocked: Vec<PathState>,
}

/// Land productivity rises to `eps_high` at date `s` and reverts at s+1.
///
/// The high productivity raises the rent D_{s+1} earned by those who buy land
/// at s. Before s both paths coincide; from s+1 on the shocked path is back on
/// the balanced path of the original ε, from a lower capital stock.
pub fn temporary_shock(
    params: &ScenarioParams,
    eps_high: f64,
    s: usize,
    k0: f64,
    periods: usize,
    belief: Belief,
) -> Result<ShockPaths> {
    if !(s > 0 && s < periods) {
        return Err(ModelError::InvalidArgument(format!(
            "shock date {s} must lie strictly inside (0, {periods})"
        )));
    }
    if !(eps_high >= params.epsilon) {
        return Err(ModelError::InvalidArgument(format!(
            "shocked epsilon {eps_high} is below the baseline {}",
            params.epsilon
        )));
    }
    let baseline = simulate(params, k0, periods, PhiStart::JumpToBgp)?;
    if eps_high == params.epsilon {
        return Ok(ShockPaths {
            shocked: baseline.clone(),
            baseline,
        });
    }
    let m = OpenModel::new(params)?;
    let base = solve_bgp(params)?;
    let a_big = params.productivity();
    let k_s = baseline[s].k;
    let next_k = |p_s: f64| {
        m.growth_scale() * k_s * m.income
            - m.returns.capital_leverage * m.returns.land_downpayment * p_s
    };

    let p_s = match belief {
        Belief::BelievedPermanent => {
            solve_bgp(&params.with_epsilon(eps_high))?.phi_star * a_big * k_s
        }
        Belief::AnticipatedTemporary => {
            // P_s·Rˣ = (ε_high·a + φ*(ε)·A)·K_{s+1}(P_s)
            let payoff = eps_high * params.a + base.phi_star * a_big;
            let upper = m.phi_bar() * a_big * k_s;
            bisect(0.0, upper, 0.0, |p| p * m.returns.rx - payoff * next_k(p))?
        }
    };

    let mut shocked = baseline[..s].to_vec();
    let k_next = next_k(p_s);
    if !(k_next > 0.0) {
        return Err(ModelError::domain("shock wipes out next-period capital"));
    }
    shocked.push(state(
        params,
        s,
        k_s,
        p_s / (a_big * k_s),
        k_next / k_s,
        params.epsilon,
    ));
    let mut k = k_next;
    for t in s + 1..=periods {
        let rent = if t == s + 1 { eps_high } else { params.epsilon };
        shocked.push(state(params, t, k, base.phi_star, base.gross_growth, rent));
        k *= base.gross_growth;
    }
    Ok(ShockPaths { baseline, shocked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> ScenarioParams {
        ScenarioParams::open_baseline()
    }

    #[test]
    fn jump_path_is_geometric() {
        let bgp = solve_bgp(&p2()).unwrap();
        let path = simulate(&p2(), 1.0, 5, PhiStart::JumpToBgp).unwrap();
        assert_eq!(path.len(), 6);
        for st in &path {
            let k = bgp.gross_growth.powi(st.t as i32);
            assert!((st.k - k).abs() / k < 1e-13);
            assert!((st.p - bgp.phi_star * p2().productivity() * st.k).abs() / st.p < 1e-13);
            assert_eq!(st.phi, bgp.phi_star);
        }
    }

    #[test]
    fn explicit_start_at_steady_state_matches_jump() {
        let p = p2().with_epsilon(0.02);
        let bgp = solve_bgp(&p).unwrap();
        // the steady state is unstable, so rounding differences grow; keep the path short
        let jump = simulate(&p, 2.0, 4, PhiStart::JumpToBgp).unwrap();
        let expl = simulate(&p, 2.0, 4, PhiStart::Explicit(bgp.phi_star)).unwrap();
        for (a, b) in jump.iter().zip(&expl) {
            assert!((a.k - b.k).abs() / a.k < 1e-9);
            assert!((a.phi - b.phi).abs() < 1e-9);
        }
    }

    #[test]
    fn explicit_start_above_steady_state_blows_up() {
        let bgp = solve_bgp(&p2()).unwrap();
        let phi0 = bgp.phi_star * 1.01;
        let err = simulate(&p2(), 1.0, 200, PhiStart::Explicit(phi0)).unwrap_err();
        assert!(matches!(err, ModelError::Domain(_)));
        let m = OpenModel::new(&p2()).unwrap();
        let (mut phi, mut steps) = (phi0, 0);
        while phi < m.phi_bar() {
            let next = m.map(phi);
            assert!(next > phi || next >= m.phi_bar() || next < 0.0);
            phi = if next < 0.0 { f64::INFINITY } else { next };
            steps += 1;
        }
        assert!(steps < 200);
    }

    #[test]
    fn null_shock_is_baseline() {
        let p = p2().with_epsilon(0.01);
        for belief in [Belief::BelievedPermanent, Belief::AnticipatedTemporary] {
            let sp = temporary_shock(&p, 0.01, 3, 1.0, 10, belief).unwrap();
            assert_eq!(sp.baseline, sp.shocked);
        }
    }

    #[test]
    fn shock_lowers_capital_and_anticipation_dampens_price() {
        let p = p2().with_epsilon(0.01);
        let perm = temporary_shock(&p, 0.05, 3, 1.0, 10, Belief::BelievedPermanent).unwrap();
        let temp = temporary_shock(&p, 0.05, 3, 1.0, 10, Belief::AnticipatedTemporary).unwrap();
        for sp in [&perm, &temp] {
            assert!(sp.shocked[3].p > sp.baseline[3].p);
            for t in 4..=10 {
                assert!(sp.shocked[t].k < sp.baseline[t].k, "t = {t}");
            }
            for t in 0..3 {
                assert_eq!(sp.shocked[t], sp.baseline[t]);
            }
        }
        assert!(temp.shocked[3].p < perm.shocked[3].p);
    }

    #[test]
    fn anticipated_price_satisfies_no_arbitrage() {
        let p = p2().with_epsilon(0.01);
        let sp = temporary_shock(&p, 0.05, 2, 1.0, 6, Belief::AnticipatedTemporary).unwrap();
        let m = OpenModel::new(&p).unwrap();
        let lhs = sp.shocked[2].p * m.returns.rx;
        let rhs = 0.05 * p.a * sp.shocked[3].k + sp.shocked[3].p;
        assert!((lhs - rhs).abs() / lhs < 1e-12);
    }

    #[test]
    fn shock_date_must_be_interior() {
        assert!(temporary_shock(&p2(), 0.05, 0, 1.0, 5, Belief::BelievedPermanent).is_err());
        assert!(temporary_shock(&p2(), 0.05, 5, 1.0, 5, Belief::BelievedPermanent).is_err());
    }
}
