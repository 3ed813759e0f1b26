//! Reference computations for tests. Deliberately naive: closed forms typed
//! in directly, brute-force fixed-point iteration and nested bisection. Shares
//! no code with the solvers it checks.

/// Flat parameter set; rates are gross.
#[derive(Debug, Clone, Copy)]
pub struct Econ {
    pub theta: f64,
    pub theta_x: f64,
    pub eta: f64,
    pub alpha: f64,
    pub a: f64,
    pub delta: f64,
    pub eps: f64,
    pub gross_r: f64,
    pub gross_mu: f64,
}

impl Econ {
    pub fn p2() -> Self {
        Econ {
            theta: 0.5,
            theta_x: 0.6,
            eta: 0.4,
            alpha: 0.33,
            a: 15.0,
            delta: 0.2,
            eps: 0.0,
            gross_r: 1.55,
            gross_mu: f64::NAN,
        }
    }

    pub fn p3() -> Self {
        Econ {
            theta: 0.2,
            theta_x: 0.6,
            eta: 0.4,
            alpha: 0.33,
            a: 15.0,
            delta: 0.9,
            eps: 0.0,
            gross_r: f64::NAN,
            gross_mu: 1.5,
        }
    }

    fn big_a(&self) -> f64 {
        self.a.powf(1.0 - self.alpha)
    }

    fn rc(&self) -> f64 {
        self.alpha * self.big_a() + 1.0 - self.delta
    }

    fn s(&self) -> f64 {
        self.eps * self.a.powf(self.alpha)
    }

    fn wage_income(&self) -> f64 {
        self.eta * (1.0 - self.alpha)
    }
}

/// Open-economy pieces at a given gross rate: (λ, Rˣ, A/(1−θRᶜ/R), down payment).
fn open_pieces(e: &Econ, gross_r: f64) -> (f64, f64, f64, f64) {
    let rc = e.rc();
    let lev_denom = 1.0 - e.theta * rc / gross_r;
    let lambda = rc * (1.0 - e.theta) / lev_denom;
    let rx = lambda / (1.0 - e.theta_x + e.theta_x * lambda / gross_r);
    let scale = e.big_a() / lev_denom;
    let dp = 1.0 - e.theta_x * rx / gross_r;
    (lambda, rx, scale, dp)
}

/// Land return, φ* and 1+g* of the open economy with unproductive land.
pub fn open_closed_form(e: &Econ) -> (f64, f64, f64) {
    let (_, rx, scale, dp) = open_pieces(e, e.gross_r);
    // 1+g* = Rˣ and 1+g = scale·(η(1−α) − dp·φ)
    let phi = (e.wage_income() - rx / scale) / dp;
    (rx, phi, rx)
}

/// φ* by damped iteration of the inverse of the φ map, started at φ̄.
/// Returns (φ*, 1+g*, iterations).
pub fn open_fixed_point(e: &Econ) -> (f64, f64, usize) {
    let (_, rx, scale, dp) = open_pieces(e, e.gross_r);
    let inc = e.wage_income();
    let s = e.s();
    let inverse = |y: f64| (y + s) * scale * inc / (rx + (y + s) * scale * dp);
    let mut phi = inc / dp;
    let omega = 0.5;
    for it in 1..=2_000_000 {
        let next = (1.0 - omega) * phi + omega * inverse(phi);
        if (next - phi).abs() <= 1e-16 * phi.abs().max(1.0) {
            let g = scale * (inc - dp * next);
            return (next, g, it);
        }
        phi = next;
    }
    (f64::NAN, f64::NAN, usize::MAX)
}

/// Monetary economy with unproductive land: (1+r*, φ*, 1+g*).
pub fn monetary_closed_form(e: &Econ) -> (f64, f64, f64) {
    let rc = e.rc();
    let m = e.gross_mu;
    let r = rc / (1.0 - e.theta_x) * ((1.0 - e.theta) / m - (e.theta_x - e.theta));
    let phi = e.wage_income() / (1.0 - e.theta_x * m)
        - rc * (1.0 - e.theta) / (e.big_a() * (1.0 - e.theta_x));
    let g = rc / (1.0 - e.theta_x) * (1.0 - e.theta - (e.theta_x - e.theta) * m);
    (r, phi, g)
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) || flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Open-economy φ* at an arbitrary gross rate by bisection on
/// G(φ)(1+εa^α/φ) − Rˣ over (0, φ̄).
pub fn open_phi_by_bisection(e: &Econ, gross_r: f64) -> Option<f64> {
    let (_, rx, scale, dp) = open_pieces(e, gross_r);
    let inc = e.wage_income();
    let s = e.s();
    let bar = inc / dp;
    let f = |phi: f64| scale * (inc - dp * phi) * (1.0 + s / phi) - rx;
    bisect(bar * 1e-12, bar, f)
}

/// Growth from the open-economy block at rate `gross_r` minus the growth the
/// money market implies, (1+r)(1+μ). Zero on the monetary balanced path.
pub fn monetary_growth_gap(e: &Econ, gross_r: f64) -> Option<f64> {
    let phi = open_phi_by_bisection(e, gross_r)?;
    let (_, _, scale, dp) = open_pieces(e, gross_r);
    Some(scale * (e.wage_income() - dp * phi) - gross_r * e.gross_mu)
}

/// Monetary balanced path by nested bisection: the inner loop solves the
/// open economy at a trial rate, the outer loop finds the rate at which
/// growth equals (1+r)(1+μ). Returns (1+r*, φ*, 1+g*).
pub fn monetary_nested(e: &Econ) -> Option<(f64, f64, f64)> {
    let rc = e.rc();
    let lower = e.theta * rc * (1.0 + 1e-12);
    let gap = |r: f64| -> f64 {
        match open_phi_by_bisection(e, r) {
            Some(phi) => {
                let (_, _, scale, dp) = open_pieces(e, r);
                scale * (e.wage_income() - dp * phi) - r * e.gross_mu
            }
            None => f64::NAN,
        }
    };
    // scan for a sign change, then refine
    let n = 4000;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let r = lower + (rc - lower) * i as f64 / n as f64;
        let v = gap(r);
        if !v.is_finite() {
            prev = None;
            continue;
        }
        if let Some((r0, v0)) = prev {
            if v0 * v <= 0.0 {
                let root = bisect(r0, r, gap)?;
                let phi = open_phi_by_bisection(e, root)?;
                return Some((root, phi, root * e.gross_mu));
            }
        }
        prev = Some((r, v));
    }
    None
}

/// Σ_{n≥1} qⁿ truncated once the next term drops below `tol`·sum.
pub fn geometric_sum(q: f64, tol: f64) -> (f64, usize) {
    let mut term = q;
    let mut sum: f64 = 0.0;
    let mut n = 0;
    while term > tol * sum.max(f64::MIN_POSITIVE) && n < 10_000_000 {
        sum += term;
        term *= q;
        n += 1;
    }
    (sum, n)
}

/// One step of the unbalanced-growth map at the open-economy rate.
pub fn unbalanced_step(e: &Econ, d: f64, phi: f64, n: f64) -> (f64, f64) {
    let (_, rx, scale, dp) = open_pieces(e, e.gross_r);
    let g = scale * (e.wage_income() - dp * phi);
    ((rx * phi - (1.0 + d) * n) / g, (1.0 + d) * n / g)
}

/// Land return of the open economy.
pub fn land_return(e: &Econ) -> f64 {
    open_pieces(e, e.gross_r).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_each_other() {
        let e = Econ::p2();
        let (_, phi, _) = open_closed_form(&e);
        let (phi_fp, _, _) = open_fixed_point(&e);
        assert!((phi - phi_fp).abs() < 1e-12 * phi);
        let m = Econ::p3();
        let (r, phi, g) = monetary_closed_form(&m);
        let (r2, phi2, g2) = monetary_nested(&m).unwrap();
        assert!((r - r2).abs() < 1e-9 && (phi - phi2).abs() < 1e-8 && (g - g2).abs() < 1e-9);
    }
}
