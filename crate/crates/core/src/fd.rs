//! Finite differences with one Richardson step, and 2×2 linear algebra for
//! local stability.

/// Derivative estimate together with the two raw differences it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Richardson {
    pub value: f64,
    /// Difference at step h.
    pub raw_h: f64,
    /// Difference at step h/2.
    pub raw_half: f64,
    pub h: f64,
}

/// Central difference: D(h/2) + (D(h/2) − D(h))/3.
pub fn central_richardson<F>(mut f: F, x: f64, h: f64) -> Option<Richardson>
where
    F: FnMut(f64) -> Option<f64>,
{
    let d = |f: &mut F, step: f64| -> Option<f64> {
        let up = f(x + step)?;
        let down = f(x - step)?;
        Some((up - down) / (2.0 * step))
    };
    let raw_h = d(&mut f, h)?;
    let raw_half = d(&mut f, 0.5 * h)?;
    finish(raw_h, raw_half, (raw_half - raw_h) / 3.0, h)
}

/// One-sided difference: 2F(h/2) − F(h). A negative `h` gives the backward
/// version.
pub fn forward_richardson<F>(mut f: F, x: f64, h: f64) -> Option<Richardson>
where
    F: FnMut(f64) -> Option<f64>,
{
    let f0 = f(x)?;
    let raw_h = (f(x + h)? - f0) / h;
    let raw_half = (f(x + 0.5 * h)? - f0) / (0.5 * h);
    finish(raw_h, raw_half, raw_half - raw_h, h)
}

fn finish(raw_h: f64, raw_half: f64, correction: f64, h: f64) -> Option<Richardson> {
    let value = raw_half + correction;
    value.is_finite().then_some(Richardson {
        value,
        raw_h,
        raw_half,
        h,
    })
}

pub type Mat2 = [[f64; 2]; 2];

/// Central-difference Jacobian of a planar map, step `rel_step·max(1, |x_i|)`.
pub fn jacobian2<F, E>(mut f: F, x: [f64; 2], rel_step: f64) -> Result<Mat2, E>
where
    F: FnMut([f64; 2]) -> Result<[f64; 2], E>,
{
    let mut jac = [[0.0; 2]; 2];
    for j in 0..2 {
        let h = rel_step * x[j].abs().max(1.0);
        let mut up = x;
        let mut down = x;
        up[j] += h;
        down[j] -= h;
        let fu = f(up)?;
        let fd = f(down)?;
        for i in 0..2 {
            jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

pub fn trace(m: &Mat2) -> f64 {
    m[0][0] + m[1][1]
}

pub fn det(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Eigenvalue moduli of a real 2×2 matrix, smaller first.
pub fn eigen_moduli(m: &Mat2) -> (f64, f64) {
    let tr = trace(m);
    let dt = det(m);
    let disc = tr * tr - 4.0 * dt;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (tr + tr.signum() * sq);
        let (l1, l2) = if q != 0.0 { (q, dt / q) } else { (0.0, 0.0) };
        let (a, b) = (l1.abs(), l2.abs());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    } else {
        let m = dt.sqrt();
        (m, m)
    }
}
