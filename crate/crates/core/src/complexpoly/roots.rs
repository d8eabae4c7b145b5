//! Simultaneous (Aberth–Ehrlich) root finding and root counting.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::profile::MonicPolynomial;
use crate::error::{Error, Result};
use crate::phase::{self, LoopFailure};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 500;
pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-6;
pub const DEFAULT_GUARD: f64 = 0.05;

/// Roots with multiplicity, their residuals |P(ζ_i)| and the distance of the
/// closest root to the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    #[serde(with = "crate::pairs")]
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub circle_gap: f64,
}

impl RootSet {
    pub fn from_roots(poly: &MonicPolynomial, roots: Vec<Complex64>) -> Self {
        let residuals = roots.iter().map(|&z| poly.eval(z).norm()).collect();
        let circle_gap = roots
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(f64::INFINITY, f64::min);
        RootSet {
            roots,
            residuals,
            circle_gap,
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Aberth–Ehrlich iteration with multiplicity clustering.
#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    pub tol: f64,
    pub max_iter: usize,
    pub cluster_radius: f64,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder {
            tol: DEFAULT_ROOT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            cluster_radius: DEFAULT_CLUSTER_RADIUS,
        }
    }
}

impl RootFinder {
    pub fn solve(&self, poly: &MonicPolynomial) -> Result<RootSet> {
        let n = poly.degree();
        let radius = 1.0 + poly.max_coeff_modulus();
        // perturbed roots of unity; the offset avoids symmetric stalls
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
            .collect();
        let mut done = vec![false; n];
        let noise = 8.0 * f64::EPSILON;

        let mut iterations = 0;
        let mut max_correction = f64::INFINITY;
        while iterations < self.max_iter && done.iter().any(|d| !d) {
            iterations += 1;
            max_correction = 0.0;
            for i in 0..n {
                if done[i] {
                    continue;
                }
                let (p, dp) = poly.eval_with_derivative(z[i]);
                if p.norm() <= noise * poly.modulus_majorant(z[i].norm()) {
                    done[i] = true;
                    continue;
                }
                let newton = p / dp;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
                if !(step.re.is_finite() && step.im.is_finite()) {
                    continue;
                }
                z[i] -= step;
                let size = step.norm();
                max_correction = max_correction.max(size);
                if size <= self.tol * (1.0 + z[i].norm()) {
                    done[i] = true;
                }
            }
        }
        if done.iter().any(|d| !d) {
            return Err(Error::NonConvergence {
                iterations,
                max_correction,
                iterate: z,
            });
        }

        let roots = cluster(&z, self.cluster_radius);
        let set = RootSet::from_roots(poly, roots);
        let scale = 1.0 + poly.max_coeff_modulus();
        for (r, &res) in set.roots.iter().zip(&set.residuals) {
            let bound = self.tol * scale * r.norm().max(1.0).powi(n as i32);
            if res > bound {
                return Err(Error::ResidualTooLarge {
                    residual: res,
                    bound,
                });
            }
        }
        Ok(set)
    }
}

/// Replaces every group of approximants within `radius` of each other (single
/// linkage) by the group's centroid, keeping one entry per member.
fn cluster(z: &[Complex64], radius: f64) -> Vec<Complex64> {
    let n = z.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut label, i)).collect();
    (0..n)
        .map(|i| {
            let members: Vec<Complex64> = (0..n)
                .filter(|&j| roots[j] == roots[i])
                .map(|j| z[j])
                .collect();
            members.iter().sum::<Complex64>() / members.len() as f64
        })
        .collect()
}

pub fn find_roots(poly: &MonicPolynomial, tol: f64, max_iter: usize) -> Result<RootSet> {
    RootFinder {
        tol,
        max_iter,
        ..RootFinder::default()
    }
    .solve(poly)
}

/// Number of roots strictly inside the unit circle, with multiplicity.
pub fn count_inside(rootset: &RootSet, guard: f64) -> Result<usize> {
    if rootset.circle_gap <= guard {
        return Err(Error::RootNearCircle {
            circle_gap: rootset.circle_gap,
            guard,
        });
    }
    Ok(rootset.roots.iter().filter(|z| z.norm() < 1.0).count())
}

/// Sample-count ceiling for the argument-principle counter.
pub const ARGUMENT_SAMPLE_CAP: usize = 1 << 20;

/// Zero count inside |ζ| = 1 as the winding of P(e^{iθ}), doubling the
/// sample count until the winding certifies.
pub fn argument_principle_count(poly: &MonicPolynomial, n_samples: usize) -> Result<usize> {
    let floor = 1e-13 * (1.0 + poly.coeffs().iter().map(|c| c.norm()).sum::<f64>());
    let mut n = n_samples.max(4 * poly.degree()).max(8);
    loop {
        let samples: Vec<Complex64> = (0..n)
            .map(|j| poly.eval(Complex64::from_polar(1.0, TAU * j as f64 / n as f64)))
            .collect();
        match phase::certified_winding(&samples, floor) {
            Ok(w) => {
                return usize::try_from(w).map_err(|_| {
                    Error::WindingNotCertified(format!("negative winding {w} of a polynomial"))
                })
            }
            Err(LoopFailure::Zero { index, modulus }) => {
                return Err(Error::ZeroOnContour { index, modulus })
            }
            Err(failure) if n * 2 > ARGUMENT_SAMPLE_CAP => {
                return Err(Error::WindingNotCertified(format!(
                    "{failure:?} at {n} samples"
                )))
            }
            Err(_) => n *= 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn cubic_with_double_root() {
        let p = MonicPolynomial::new(vec![c(0., 0.), c(0., 0.), c(3., 0.)]).unwrap();
        let set = find_roots(&p, DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap();
        let r = sorted(set.roots.clone());
        assert!((r[0] - c(-3., 0.)).norm() < 1e-12);
        assert!(r[1].norm() < 1e-7 && r[2].norm() < 1e-7);
        assert_eq!(count_inside(&set, DEFAULT_GUARD).unwrap(), 2);
    }

    #[test]
    fn quartic_factorisation() {
        let p = MonicPolynomial::new(vec![c(0., 0.), c(0., 0.), c(6., 0.), c(0., 0.)]).unwrap();
        let set = find_roots(&p, DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap();
        let s6 = 6f64.sqrt();
        for target in [c(0., s6), c(0., -s6)] {
            assert!(set.roots.iter().any(|z| (z - target).norm() < 1e-12));
        }
        assert_eq!(set.roots.iter().filter(|z| z.norm() < 1e-7).count(), 2);
        assert_eq!(count_inside(&set, DEFAULT_GUARD).unwrap(), 2);
    }

    #[test]
    fn count_with_multiplicity() {
        let p = MonicPolynomial::new(vec![c(0., 0.)]).unwrap();
        let set = RootSet::from_roots(&p, vec![c(0., 0.5), c(3., 0.), c(3., 0.)]);
        assert_eq!(count_inside(&set, 0.05).unwrap(), 1);
    }

    #[test]
    fn guard_violation() {
        let p = MonicPolynomial::new(vec![c(-1.0201, 0.), c(0., 0.)]).unwrap(); // roots ±1.01
        let set = find_roots(&p, DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(matches!(
            count_inside(&set, 0.05),
            Err(Error::RootNearCircle { .. })
        ));
    }

    #[test]
    fn non_convergence_reports_iterate() {
        let p = MonicPolynomial::new(vec![c(1., 2.), c(-3., 0.5), c(0.7, 0.), c(2., 2.)]).unwrap();
        match find_roots(&p, 1e-300, 2) {
            Err(Error::NonConvergence {
                iterate,
                iterations,
                ..
            }) => {
                assert_eq!(iterations, 2);
                assert_eq!(iterate.len(), 4);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn argument_principle_examples() {
        let p = MonicPolynomial::new(vec![c(0., 0.), c(0., 0.), c(3., 0.)]).unwrap();
        assert_eq!(argument_principle_count(&p, 256).unwrap(), 2);
        let p = MonicPolynomial::new(vec![c(4., 0.), c(0., 0.)]).unwrap();
        assert_eq!(argument_principle_count(&p, 256).unwrap(), 0);
    }

    #[test]
    fn argument_principle_zero_on_contour() {
        // z^2 - 1 vanishes at the sample node θ = 0
        let p = MonicPolynomial::new(vec![c(-1., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(
            argument_principle_count(&p, 64),
            Err(Error::ZeroOnContour { index: 0, .. })
        ));
    }

    #[test]
    fn clustering_merges_close_pairs_only() {
        let z = [c(1.0, 0.0), c(1.0 + 1e-8, 0.0), c(-2.0, 0.0)];
        let out = cluster(&z, 1e-6);
        assert_eq!(out[0], out[1]);
        assert_eq!(out[2], c(-2.0, 0.0));
    }
}
