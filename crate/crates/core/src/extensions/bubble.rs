//! Fundamental value of land and the transversality tail.

use super::unbalanced::unbalanced_path;
use crate::error::{ModelError, Result};
use crate::monetary::MonetaryBgp;
use crate::open::OpenBgp;
use crate::params::ScenarioParams;

const TAIL_TOL: f64 = 1e-10;
const MAX_TERMS: usize = 1_000_000;

/// A balanced path from which land can be valued.
pub trait LandValuation {
    fn phi_star(&self) -> f64;
    fn gross_growth(&self) -> f64;
    /// Rate at which land buyers discount, the unleveraged land return.
    fn land_return(&self) -> f64;
}

impl LandValuation for OpenBgp {
    fn phi_star(&self) -> f64 {
        self.phi_star
    }
    fn gross_growth(&self) -> f64 {
        self.gross_growth
    }
    fn land_return(&self) -> f64 {
        self.rx_star
    }
}

impl LandValuation for MonetaryBgp {
    fn phi_star(&self) -> f64 {
        self.phi_star
    }
    fn gross_growth(&self) -> f64 {
        self.gross_growth
    }
    fn land_return(&self) -> f64 {
        self.returns.rx
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BubbleReport {
    /// Fundamental value over current rent from the truncated sum; NaN when
    /// land pays no rent.
    pub v_over_d: f64,
    /// The same ratio in closed form.
    pub v_over_d_closed: f64,
    pub p_exceeds_v: bool,
    /// P_{t+N}/(Rˣ^N·P_t).
    pub tv_tail: f64,
    pub horizon: usize,
    /// Price over truncated fundamental value at the valuation date.
    pub p_over_v: f64,
}

fn horizon_for(q: f64) -> Result<usize> {
    let mut n = 0;
    let mut qn = 1.0;
    while qn >= TAIL_TOL {
        qn *= q;
        n += 1;
        if n > MAX_TERMS {
            return Err(ModelError::TruncationCap { cap: MAX_TERMS });
        }
    }
    Ok(n)
}

/// Values land on a balanced path by summing discounted rents.
///
/// With `horizon = None` the sum runs until the tail ((1+g*)/Rˣ)^N drops
/// below 1e-10. Unproductive land has no fundamental value: the report then
/// flags the price as exceeding it rather than failing.
pub fn fundamental_value<B: LandValuation>(
    params: &ScenarioParams,
    bgp: &B,
    horizon: Option<usize>,
) -> Result<BubbleReport> {
    let s = params.dividend_ratio();
    let q = bgp.gross_growth() / bgp.land_return();
    if s == 0.0 {
        return Ok(BubbleReport {
            v_over_d: f64::NAN,
            v_over_d_closed: f64::NAN,
            p_exceeds_v: true,
            tv_tail: q.powi(horizon.unwrap_or(0).min(i32::MAX as usize) as i32),
            horizon: horizon.unwrap_or(0),
            p_over_v: f64::INFINITY,
        });
    }
    if !(q < 1.0) {
        return Err(ModelError::domain(format!(
            "growth {} is not below the land return {}",
            bgp.gross_growth(),
            bgp.land_return()
        )));
    }
    let n = match horizon {
        Some(n) => n,
        None => horizon_for(q)?,
    };
    let mut sum = 0.0;
    let mut qn = 1.0;
    for _ in 0..n {
        qn *= q;
        sum += qn;
    }
    Ok(BubbleReport {
        v_over_d: sum,
        v_over_d_closed: q / (1.0 - q),
        p_exceeds_v: false,
        tv_tail: qn,
        horizon: n,
        p_over_v: bgp.phi_star() / (s * sum),
    })
}

/// Bubble check along the unbalanced path with rent growth `d`, valued at
/// t = 0 from the dividend share `n0` and followed for `horizon` periods.
pub fn bubble_detect_unbalanced(
    params: &ScenarioParams,
    d: f64,
    n0: f64,
    horizon: usize,
) -> Result<BubbleReport> {
    let path = unbalanced_path(params, d, n0, horizon).map_err(|e| match e {
        ModelError::AssumptionViolated(rep) => ModelError::domain(format!(
            "fundamental value undefined: {} fails",
            rep.failed_ids().join(", ")
        )),
        other => other,
    })?;
    let rx = path.rx;
    let ratio = (1.0 + d) / rx;
    let closed = (1.0 + d) / (rx - (1.0 + d));
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut terms = 0;
    loop {
        term *= ratio;
        sum += term;
        terms += 1;
        if term / (1.0 - ratio) < 1e-17 * sum {
            break;
        }
        if terms >= MAX_TERMS {
            return Err(ModelError::TruncationCap { cap: MAX_TERMS });
        }
    }
    // P_N/(Rˣ^N P_0) = (φ_N/φ_0)·Π G_t/Rˣ
    let mut tail = path.path[horizon].phi / path.phi0;
    for g in &path.growth[..horizon] {
        tail *= g / rx;
    }
    let p_over_v = path.phi0 / (n0 * sum);
    Ok(BubbleReport {
        v_over_d: sum,
        v_over_d_closed: closed,
        p_exceeds_v: rx > 1.0 + d && tail > 0.0 && p_over_v > 1.0,
        tv_tail: tail,
        horizon,
        p_over_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monetary::solve_bgp_monetary;
    use crate::open::solve_bgp;

    #[test]
    fn balanced_price_equals_fundamental_value() {
        let p = ScenarioParams::open_baseline().with_epsilon(0.05);
        let bgp = solve_bgp(&p).unwrap();
        let rep = fundamental_value(&p, &bgp, None).unwrap();
        assert!(!rep.p_exceeds_v);
        assert!(rep.tv_tail < 1e-10);
        assert!((rep.p_over_v - 1.0).abs() <= rep.tv_tail * 1.01 + 1e-14);
        assert!((rep.v_over_d - rep.v_over_d_closed).abs() / rep.v_over_d_closed < 1e-9);
        // fixed horizon: the gap is the geometric tail
        let short = fundamental_value(&p, &bgp, Some(10)).unwrap();
        let gap = 1.0 - 1.0 / short.p_over_v;
        assert!((gap - short.tv_tail).abs() < 1e-12);
    }

    #[test]
    fn unproductive_land_is_pure_store_of_value() {
        let p = ScenarioParams::open_baseline();
        let rep = fundamental_value(&p, &solve_bgp(&p).unwrap(), Some(50)).unwrap();
        assert!(rep.p_exceeds_v && rep.v_over_d.is_nan());
        assert!((rep.tv_tail - 1.0).abs() < 1e-10);
    }

    #[test]
    fn monetary_path_values_land() {
        let p = ScenarioParams::monetary_baseline().with_epsilon(0.2);
        let bgp = solve_bgp_monetary(&p).unwrap();
        let rep = fundamental_value(&p, &bgp, None).unwrap();
        assert!((rep.p_over_v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unbalanced_growth_produces_a_bubble() {
        let p = ScenarioParams::open_baseline();
        let rep = bubble_detect_unbalanced(&p, 0.02, 0.01, 200).unwrap();
        assert!((rep.v_over_d - 0.725_414_328_645_987).abs() < 1e-12);
        assert!((rep.v_over_d - rep.v_over_d_closed).abs() < 1e-12 * rep.v_over_d_closed);
        assert!(rep.p_exceeds_v);
        assert!(rep.tv_tail > 0.1);
    }

    #[test]
    fn rent_growth_at_land_return_is_rejected() {
        let p = ScenarioParams::open_baseline();
        assert!(matches!(
            bubble_detect_unbalanced(&p, 1.5, 0.01, 20),
            Err(ModelError::Domain(_))
        ));
    }
}
