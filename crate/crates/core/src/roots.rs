//! Bracketed scalar root finding and a cancellation-safe quadratic solver.

use crate::error::{ModelError, Result};

/// Bisection on `[lo, hi]`. Stops once the bracket is no wider than `x_tol`
/// (or collapses to adjacent floats). `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F>(mut lo: f64, mut hi: f64, x_tol: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() || f_lo.is_infinite()) || f_lo.signum() == f_hi.signum() || f_hi.is_nan()
    {
        return Err(ModelError::RootNotBracketed { lo, hi, f_lo, f_hi });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection on a monotone predicate: `pred(lo)` is false, `pred(hi)` is true.
/// Returns the final `(lo, hi)` bracket of the switch point.
pub fn bisect_predicate<P>(mut lo: f64, mut hi: f64, x_tol: f64, mut pred: P) -> (f64, f64)
where
    P: FnMut(f64) -> bool,
{
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Real roots of `qa·x² + qb·x + qc = 0` with `qa != 0`, larger root first.
pub fn quadratic_roots(qa: f64, qb: f64, qc: f64) -> Option<(f64, f64)> {
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 || !disc.is_finite() || qa == 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // q has the sign of -qb so that neither root suffers cancellation.
    let q = if qb >= 0.0 {
        -0.5 * (qb + sq)
    } else {
        -0.5 * (qb - sq)
    };
    let r1 = q / qa;
    let r2 = if q != 0.0 { qc / q } else { -qb / qa - r1 };
    Some(if r1 >= r2 { (r1, r2) } else { (r2, r1) })
}
