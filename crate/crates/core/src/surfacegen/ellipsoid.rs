//! Ellipsoids x²/a₁ + y²/a₂ + z²/a₃ = 1 in the line-space chart.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minitwistor::{dbar, line_point, OrientedLine, SpacePoint, DEFAULT_STEP};

/// Squared semi-axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidParams {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl EllipsoidParams {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if [a1, a2, a3].iter().all(|a| *a > 0.0 && a.is_finite()) {
            Ok(EllipsoidParams { a1, a2, a3 })
        } else {
            Err(Error::InvalidInput(format!(
                "squared semi-axes must be positive, got ({a1}, {a2}, {a3})"
            )))
        }
    }

    pub fn is_round(&self) -> bool {
        self.a1 == self.a2 && self.a2 == self.a3
    }

    pub fn is_rotational(&self) -> bool {
        self.a1 == self.a2
    }

    /// x²/a₁ + y²/a₂ + z²/a₃ − 1.
    pub fn quadric_residual(&self, p: &SpacePoint) -> f64 {
        let [x, y, z] = p.xyz();
        x * x / self.a1 + y * y / self.a2 + z * z / self.a3 - 1.0
    }

    fn radicand(&self, xi: Complex64) -> Result<f64> {
        let xx = xi.norm_sqr();
        let value = 4.0 * self.a1 * xi.re * xi.re
            + 4.0 * self.a2 * xi.im * xi.im
            + self.a3 * (1.0 - xx) * (1.0 - xx);
        if value > 0.0 && value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonPositiveRadicand { xi, value })
        }
    }
}

/// Section F and support function r of the ellipsoid at `xi`.
pub fn ellipsoid_f_r(params: &EllipsoidParams, xi: Complex64) -> Result<(Complex64, f64)> {
    let EllipsoidParams { a1, a2, a3 } = *params;
    let root = params.radicand(xi)?.sqrt();
    let xb = xi.conj();
    let one = Complex64::new(1.0, 0.0);
    let num = (xi + xb) * a1 * (one - xi * xi) + (xi - xb) * a2 * (one + xi * xi)
        - xi * (2.0 * a3) * (one - xi * xb);
    Ok((num / (2.0 * root), root / (1.0 + xi.norm_sqr())))
}

pub fn ellipsoid_f(params: &EllipsoidParams, xi: Complex64) -> Result<Complex64> {
    ellipsoid_f_r(params, xi).map(|(f, _)| f)
}

pub fn ellipsoid_r(params: &EllipsoidParams, xi: Complex64) -> Result<f64> {
    ellipsoid_f_r(params, xi).map(|(_, r)| r)
}

/// ∂̄F: closed form for a₁ = a₂, central differences otherwise.
pub fn ellipsoid_dbar_f(params: &EllipsoidParams, xi: Complex64) -> Result<Complex64> {
    if params.is_rotational() {
        let (a, a3) = (params.a1, params.a3);
        let rad = params.radicand(xi)?;
        Ok(xi * xi * (-2.0 * a * (a - a3) * (1.0 + xi.norm_sqr())) / rad.powf(1.5))
    } else {
        dbar(&|z| ellipsoid_f(params, z), xi, DEFAULT_STEP)
    }
}

pub fn ellipsoid_embed(params: &EllipsoidParams, xi: Complex64) -> Result<SpacePoint> {
    let (eta, r) = ellipsoid_f_r(params, xi)?;
    Ok(line_point(OrientedLine { xi, eta }, r))
}

/// Positive umbilic parameters R₀ on the real axis, ascending. The two values
/// are reciprocal; the four umbilics sit at ξ = ±R₀.
pub fn triaxial_umbilics(params: &EllipsoidParams) -> Result<Vec<f64>> {
    let EllipsoidParams { a1, a2, a3 } = *params;
    if a1 == a2 {
        return Err(Error::SymmetricEllipsoid);
    }
    let q = ((a1 + a2) * a3 - 2.0 * a1 * a2) / ((a1 - a2) * a3);
    let disc = q * q - 1.0;
    if disc < 0.0 {
        return Err(Error::NoRealUmbilics);
    }
    let mut out: Vec<f64> = [-q - disc.sqrt(), -q + disc.sqrt()]
        .into_iter()
        .filter(|s| *s > 0.0)
        .map(f64::sqrt)
        .collect();
    if out.is_empty() {
        return Err(Error::NoRealUmbilics);
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

/// The four umbilic parameters ±R₀ for both positive roots.
pub fn triaxial_umbilic_points(params: &EllipsoidParams) -> Result<Vec<Complex64>> {
    Ok(triaxial_umbilics(params)?
        .into_iter()
        .flat_map(|r| [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)])
        .collect())
}

/// Rotation taking ξ = R₀ to the origin, applied to a section.
///
/// The returned evaluator at chart point w evaluates F at ξ = (w+R₀)/(1−R₀w)
/// and multiplies by (1+R₀²)/(1+R₀ξ)², the derivative of the forward map
/// ξ ↦ (ξ−R₀)/(1+R₀ξ).
pub fn mobius_recenter<F>(f: F, r0: f64) -> impl Fn(Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    move |w: Complex64| {
        let (xi, factor) = mobius_pullback(w, r0)?;
        Ok(f(xi)? * factor)
    }
}

/// Support function after the same rotation; it transforms as a scalar.
pub fn mobius_recenter_support<R>(r: R, r0: f64) -> impl Fn(Complex64) -> Result<f64>
where
    R: Fn(Complex64) -> Result<f64>,
{
    move |w: Complex64| r(mobius_pullback(w, r0)?.0)
}

fn mobius_pullback(w: Complex64, r0: f64) -> Result<(Complex64, Complex64)> {
    let den = Complex64::new(1.0, 0.0) - w * r0;
    if den.norm() < 1e-14 {
        return Err(Error::MobiusPole { xi: w });
    }
    let xi = (w + r0) / den;
    let back = Complex64::new(1.0, 0.0) + xi * r0;
    if back.norm() < 1e-14 {
        return Err(Error::MobiusPole { xi: w });
    }
    Ok((xi, (1.0 + r0 * r0) / (back * back)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minitwistor::{check_support_relation, probe_points};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn round_sphere_is_totally_umbilic() {
        let p = EllipsoidParams::new(2.0, 2.0, 2.0).unwrap();
        for xi in probe_points(100, 2.0, &[]) {
            let (f, r) = ellipsoid_f_r(&p, xi).unwrap();
            assert!(f.norm() < 1e-15);
            assert!((r - 2f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn rotational_closed_form() {
        let (a, a3) = (2.0, 1.0);
        let p = EllipsoidParams::new(a, a, a3).unwrap();
        for (rr, th) in [(0.3, 0.4), (1.2, -2.0), (1.9, 3.0)] {
            let xi = Complex64::from_polar(rr, th);
            let rad: f64 = 4.0 * a * rr * rr + a3 * (1.0 - rr * rr).powi(2);
            let f = Complex64::from_polar((a - a3) * rr * (1.0 - rr * rr) / rad.sqrt(), th);
            let r = rad.sqrt() / (1.0 + rr * rr);
            let (gf, gr) = ellipsoid_f_r(&p, xi).unwrap();
            assert!((gf - f).norm() < 1e-14);
            assert!((gr - r).abs() < 1e-14);
        }
    }

    #[test]
    fn rotational_dbar_matches_differences() {
        let p = EllipsoidParams::new(2.0, 2.0, 1.0).unwrap();
        assert_eq!(ellipsoid_dbar_f(&p, c(0., 0.)).unwrap(), c(0., 0.));
        for xi in probe_points(64, 2.0, &[]) {
            let closed = ellipsoid_dbar_f(&p, xi).unwrap();
            let fd = dbar(&|z| ellipsoid_f(&p, z), xi, 1e-5).unwrap();
            assert!((closed - fd).norm() < 1e-6, "{xi}: {closed} vs {fd}");
        }
    }

    #[test]
    fn support_relation_holds_for_triaxial() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        let pts = probe_points(200, 2.0, &[]);
        let res =
            check_support_relation(|z| ellipsoid_r(&p, z), |z| ellipsoid_f(&p, z), &pts, 1e-5)
                .unwrap();
        assert!(res < 1e-6, "{res}");
    }

    #[test]
    fn embedding_lies_on_quadric() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        for xi in probe_points(300, 3.0, &[]) {
            let q = ellipsoid_embed(&p, xi).unwrap();
            assert!(p.quadric_residual(&q).abs() < 1e-12);
        }
    }

    #[test]
    fn umbilic_parameters_321() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        let r = triaxial_umbilics(&p).unwrap();
        // −Q = 7, so R₀² = 7 ∓ √48
        assert!((r[0] - (7.0 - 48f64.sqrt()).sqrt()).abs() < 1e-15);
        assert!((r[1] - (7.0 + 48f64.sqrt()).sqrt()).abs() < 1e-15);
        assert!((r[0] * r[1] - 1.0).abs() < 1e-14);
        for &r0 in &r {
            let d = ellipsoid_dbar_f(&p, c(r0, 0.)).unwrap();
            assert!(d.norm() < 1e-8, "{r0}: {d}");
        }
    }

    #[test]
    fn umbilic_errors() {
        let p = EllipsoidParams::new(2.0, 2.0, 1.0).unwrap();
        assert!(matches!(
            triaxial_umbilics(&p),
            Err(Error::SymmetricEllipsoid)
        ));
        let p = EllipsoidParams::new(2.0, 3.0, 1.0).unwrap();
        assert!(matches!(triaxial_umbilics(&p), Err(Error::NoRealUmbilics)));
        assert!(EllipsoidParams::new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn recenter_identity_and_zero() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        let id = mobius_recenter(|z| ellipsoid_f(&p, z), 0.0);
        for xi in probe_points(20, 1.5, &[]) {
            assert_eq!(id(xi).unwrap(), ellipsoid_f(&p, xi).unwrap());
        }
        let r0 = triaxial_umbilics(&p).unwrap()[0];
        let g = mobius_recenter(|z| ellipsoid_f(&p, z), r0);
        assert!(dbar(&g, c(0., 0.), 1e-5).unwrap().norm() < 1e-8);
    }

    #[test]
    fn recentered_pair_still_satisfies_support_relation() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        let r0 = triaxial_umbilics(&p).unwrap()[0];
        let g = mobius_recenter(|z| ellipsoid_f(&p, z), r0);
        let s = mobius_recenter_support(|z| ellipsoid_r(&p, z), r0);
        let pts = probe_points(100, 1.0, &[c(1.0 / r0, 0.)]);
        let res = check_support_relation(s, g, &pts, 1e-5).unwrap();
        assert!(res < 1e-6, "{res}");
    }

    #[test]
    fn recenter_pole() {
        let g = mobius_recenter(Ok, 2.0);
        assert!(matches!(g(c(0.5, 0.)), Err(Error::MobiusPole { .. })));
    }
}
