use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{self, LoopFailure};

/// Starting number of θ samples on each circle.
pub const DEFAULT_N_THETA: usize = 1024;
/// Ceiling for adaptive θ refinement.
pub const N_THETA_CAP: usize = 1 << 20;

/// Radii used for surfaces whose ∂̄F is exactly homogeneous in R.
pub const SURFACE_RADII: [f64; 3] = [0.5, 0.1, 0.01];

/// R_k = 2^{−k}, k = 3..=10, for general evaluators.
pub fn dyadic_radii() -> Vec<f64> {
    (3..=10).map(|k| 2f64.powi(-k)).collect()
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInteger(pub i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Integer winding of a closed loop of samples.
pub fn winding_number(samples: &[Complex64]) -> Result<i64> {
    phase::certified_winding(samples, 0.0).map_err(|failure| match failure {
        LoopFailure::Zero { index, modulus } => Error::ZeroOnContour { index, modulus },
        other => Error::WindingNotCertified(format!("{other:?}")),
    })
}

/// Winding of `f` on each circle of `radii`, with adaptive θ refinement.
pub fn windings_on_radii<F>(f: &F, radii: &[f64], n_theta: usize) -> Result<Vec<(f64, i64)>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    radii
        .iter()
        .map(|&r| {
            phase::adaptive_circle_winding(f, r, n_theta, N_THETA_CAP, 0.0).map(|(w, _)| (r, w))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEstimate {
    pub index: HalfInteger,
    /// (radius, winding) for every circle evaluated.
    pub windings: Vec<(f64, i64)>,
}

impl IndexEstimate {
    pub fn winding(&self) -> i64 {
        self.index.twice()
    }
}

/// Index of the umbilic at ξ = 0 as half the winding of ∂̄F on shrinking
/// circles. Accepts once two consecutive radii give the same winding.
pub fn index_at_origin<F>(dbar_f: F, radii: &[f64], n_theta: usize) -> Result<IndexEstimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut windings: Vec<(f64, i64)> = Vec::new();
    for &r in radii {
        let (w, _) = phase::adaptive_circle_winding(&dbar_f, r, n_theta, N_THETA_CAP, 0.0)?;
        if let Some(&(_, prev)) = windings.last() {
            if prev == w {
                windings.push((r, w));
                return Ok(IndexEstimate {
                    index: HalfInteger(w),
                    windings,
                });
            }
        }
        windings.push((r, w));
    }
    Err(Error::NonStabilizingWinding { windings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn half_integer_display() {
        assert_eq!(HalfInteger(1).to_string(), "1/2");
        assert_eq!(HalfInteger(-3).to_string(), "-3/2");
        assert_eq!(HalfInteger(2).to_string(), "1");
        assert_eq!(HalfInteger(0).value(), 0.0);
    }

    #[test]
    fn winding_examples() {
        let n = 256;
        let s: Vec<_> = (0..n)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64))
            .collect();
        assert_eq!(winding_number(&s).unwrap(), 1);
        let s: Vec<_> = (0..n)
            .map(|j| Complex64::from_polar(1.0, -2.0 * TAU * j as f64 / n as f64))
            .collect();
        assert_eq!(winding_number(&s).unwrap(), -2);
        let mut z = s.clone();
        z[5] = Complex64::new(0.0, 0.0);
        assert!(matches!(
            winding_number(&z),
            Err(Error::ZeroOnContour { index: 5, .. })
        ));
    }

    #[test]
    fn index_of_generic_umbilics() {
        // ∂̄F ≈ ξ: index 1/2; ∂̄F ≈ ξ̄: index −1/2; ∂̄F ≈ ξ²: index 1
        let est = index_at_origin(|z| Ok(z + z * z * 0.3), &dyadic_radii(), 64).unwrap();
        assert_eq!(est.index, HalfInteger(1));
        let est = index_at_origin(|z| Ok(z.conj()), &dyadic_radii(), 64).unwrap();
        assert_eq!(est.index, HalfInteger(-1));
        let est = index_at_origin(|z| Ok(z * z), &dyadic_radii(), 64).unwrap();
        assert_eq!(est.index, HalfInteger(2));
    }

    #[test]
    fn unstable_winding_reported() {
        // zero at ξ = 0.2 inside the first circle only
        let f = |z: Complex64| Ok(z * (z - 0.2));
        let err = index_at_origin(f, &[0.3, 0.1], 64).unwrap_err();
        assert!(matches!(err, Error::NonStabilizingWinding { .. }));
    }

    #[test]
    fn vanishing_on_circle() {
        let err = index_at_origin(|_| Ok(Complex64::new(0.0, 0.0)), &[0.1, 0.05], 64).unwrap_err();
        assert!(matches!(err, Error::ZeroOnContour { .. }));
    }
}
