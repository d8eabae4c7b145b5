use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexpoly::MonicPolynomial;
use crate::error::{Error, Result};
use crate::minitwistor::{fourier_g, SectionSeries, TrigPolynomial};
use crate::surfacegen::UmbilicSurface;

/// Ceiling on the θ-grid used to certify min |G_N| > 0.
pub const GRID_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nondegeneracy {
    /// First k with G_k not identically zero.
    pub order: usize,
    /// Minimum of |G_N| over the final grid.
    pub min_gn: f64,
    /// Rigorous lower bound min_grid − L·δ/2 on min_θ |G_N|.
    pub lower_bound: f64,
    pub grid_points: usize,
}

/// Certifies min_θ |G(θ)| > 0 on a grid over one period [0, π), starting at
/// `start` points and doubling. Returns (grid min, lower bound, points).
pub fn certify_no_zero(g: &TrigPolynomial, start: usize) -> Result<(f64, f64, usize)> {
    let lip = g.lipschitz_bound();
    let mut points = start.max(1);
    loop {
        let delta = PI / points as f64;
        let grid_min = (0..points)
            .map(|j| g.eval(delta * j as f64).norm())
            .fold(f64::INFINITY, f64::min);
        let lower = grid_min - lip * delta / 2.0;
        if lower > 0.0 {
            return Ok((grid_min, lower, points));
        }
        if points * 2 > GRID_CAP {
            return Err(Error::NotCertified {
                grid_min,
                slack: lip * delta / 2.0,
                points,
            });
        }
        points *= 2;
    }
}

/// Order and certified minimum of the leading ∂̄F layer, checking layers
/// k = 0..=max_order.
pub fn series_nondegeneracy(series: &SectionSeries, max_order: usize) -> Result<Nondegeneracy> {
    for k in 0..=max_order {
        let g = fourier_g(series, k);
        if g.is_zero() {
            continue;
        }
        let (min_gn, lower_bound, grid_points) = certify_no_zero(&g, 4 * k + 1)?;
        return Ok(Nondegeneracy {
            order: k,
            min_gn,
            lower_bound,
            grid_points,
        });
    }
    Err(Error::Degenerate { max_order })
}

pub fn nondegeneracy(surface: &UmbilicSurface) -> Result<Nondegeneracy> {
    let series = surface.section_series();
    series_nondegeneracy(&series, series.max_total_degree())
}

/// P_N(ζ) = Σ (N−n+1)(A_{n,N−n+1}/A_{N1}) ζⁿ, read off the series of F.
pub fn extract_pn(surface: &UmbilicSurface) -> Result<MonicPolynomial> {
    let n = surface.degree();
    let series = surface.section_series();
    let lead = series.get(n, 1);
    if lead.norm() == 0.0 {
        return Err(Error::ZeroLeading);
    }
    let coeffs = (0..n)
        .map(|k| series.get(k, n - k + 1) * (n - k + 1) as f64 / lead)
        .collect();
    MonicPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexpoly::{poly_from_profile, WeightedSymmetricProfile};
    use crate::surfacegen::build_surface;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn surface(pairs: &[(f64, f64)]) -> UmbilicSurface {
        let p = WeightedSymmetricProfile::from_pairs(pairs).unwrap();
        build_surface(&p, 1.0, 10.0).unwrap()
    }

    #[test]
    fn cubic_fixture_order_and_minimum() {
        let nd = nondegeneracy(&surface(&[(1., 0.), (0., 0.), (0., 0.)])).unwrap();
        assert_eq!(nd.order, 3);
        // |3 + e^{2iθ}| ≥ 2, attained at θ = π/2 which is on the 13-point grid only approximately
        assert!(nd.min_gn >= 2.0 - 1e-12 && nd.min_gn < 2.1);
        assert!(nd.lower_bound > 0.0 && nd.lower_bound <= 2.0);
    }

    #[test]
    fn sphere_is_degenerate() {
        let err = series_nondegeneracy(&SectionSeries::new(), 8).unwrap_err();
        assert!(matches!(err, Error::Degenerate { max_order: 8 }));
    }

    #[test]
    fn root_near_circle_not_certified() {
        // ζ² + (1+1e−9)²: roots ±i(1+1e−9)
        let r = (1.0 + 1e-9f64).powi(2);
        let s = surface(&[(0., 0.), (r, 0.)]);
        assert!(matches!(nondegeneracy(&s), Err(Error::NotCertified { .. })));
    }

    #[test]
    fn extracted_polynomials() {
        let pn = extract_pn(&surface(&[(1., 0.), (0., 0.), (0., 0.)])).unwrap();
        assert_eq!(pn.coeffs(), &[c(0., 0.), c(0., 0.), c(3., 0.)]);
        let pn = extract_pn(&surface(&[(0., 0.), (0.25, 0.)])).unwrap();
        assert!((pn.coeff(0) - c(0.25, 0.)).norm() < 1e-15);
        assert_eq!(pn.coeff(1), c(0., 0.));
    }

    #[test]
    fn extraction_matches_profile_polynomial() {
        let p = WeightedSymmetricProfile::from_pairs(&[(0., 0.), (1., 0.), (0., 0.), (0., 0.)])
            .unwrap();
        let s = build_surface(&p, 2.5, 3.0).unwrap();
        let a = extract_pn(&s).unwrap();
        let b = poly_from_profile(&p);
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
