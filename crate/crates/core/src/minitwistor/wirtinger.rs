//! Wirtinger derivatives by central differences and the residual checks of
//! the Lagrangian and support-function equations.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-5;
/// Probe points closer than this to a declared singularity are skipped.
pub const SINGULAR_EXCLUSION: f64 = 1e-3;

fn finite(xi: Complex64, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation {
            xi,
            reason: "non-finite value".into(),
        })
    }
}

/// (∂f, ∂̄f) at `xi` from the four samples f(xi ± h), f(xi ± ih).
pub fn wirtinger<F>(f: &F, xi: Complex64, h: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(Complex64) -> Result<Complex64> + ?Sized,
{
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    let fx = (finite(xi + dx, f(xi + dx)?)? - finite(xi - dx, f(xi - dx)?)?) / (2.0 * h);
    let fy = (finite(xi + dy, f(xi + dy)?)? - finite(xi - dy, f(xi - dy)?)?) / (2.0 * h);
    let i = Complex64::i();
    Ok(((fx - i * fy) * 0.5, (fx + i * fy) * 0.5))
}

pub fn dbar<F>(f: &F, xi: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + ?Sized,
{
    Ok(wirtinger(f, xi, h)?.1)
}

fn weight(xi: Complex64) -> f64 {
    let w = 1.0 + xi.norm_sqr();
    w * w
}

/// Max over `points` of |∂[F/(1+|ξ|²)²] − ∂̄[conj F/(1+|ξ|²)²]|.
pub fn check_lagrangian_pde<F>(f: F, points: &[Complex64], h: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {h}"
        )));
    }
    let scaled = |xi: Complex64| -> Result<Complex64> { Ok(f(xi)? / weight(xi)) };
    let scaled_conj = |xi: Complex64| -> Result<Complex64> { Ok(f(xi)?.conj() / weight(xi)) };
    points.iter().try_fold(0.0f64, |worst, &xi| {
        let (d, _) = wirtinger(&scaled, xi, h)?;
        let (_, db) = wirtinger(&scaled_conj, xi, h)?;
        Ok(worst.max((d - db).norm()))
    })
}

/// Max over `points` of |∂̄r − 2F/(1+|ξ|²)²|.
pub fn check_support_relation<R, F>(r: R, f: F, points: &[Complex64], h: f64) -> Result<f64>
where
    R: Fn(Complex64) -> Result<f64>,
    F: Fn(Complex64) -> Result<Complex64>,
{
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {h}"
        )));
    }
    let r_c = |xi: Complex64| -> Result<Complex64> { Ok(Complex64::new(r(xi)?, 0.0)) };
    points.iter().try_fold(0.0f64, |worst, &xi| {
        let db = dbar(&r_c, xi, h)?;
        let rhs = finite(xi, f(xi)?)? * 2.0 / weight(xi);
        Ok(worst.max((db - rhs).norm()))
    })
}

/// Deterministic golden-angle points filling the disk |ξ| ≤ `radius`, with
/// points near any of `singular` removed.
pub fn probe_points(count: usize, radius: f64, singular: &[Complex64]) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let rho = radius * ((k as f64 + 0.5) / count as f64).sqrt();
            Complex64::from_polar(rho, golden * k as f64)
        })
        .filter(|p| singular.iter().all(|s| (p - s).norm() > SINGULAR_EXCLUSION))
        .collect()
}
