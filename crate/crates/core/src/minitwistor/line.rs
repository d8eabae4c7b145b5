use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// An oriented line in the tangent-bundle chart: direction coordinate `xi`
/// (stereographic from the south pole) and fibre coordinate `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedLine {
    pub xi: Complex64,
    pub eta: Complex64,
}

/// A point of R³ written as z = x¹ + i x², t = x³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacePoint {
    #[serde(with = "crate::pairs::one")]
    pub z: Complex64,
    pub t: f64,
}

impl SpacePoint {
    pub fn from_xyz([x, y, t]: [f64; 3]) -> Self {
        SpacePoint {
            z: Complex64::new(x, y),
            t,
        }
    }

    pub fn xyz(&self) -> [f64; 3] {
        [self.z.re, self.z.im, self.t]
    }

    pub fn is_finite(&self) -> bool {
        self.z.re.is_finite() && self.z.im.is_finite() && self.t.is_finite()
    }
}

/// The point at affine parameter `r` along `line`.
pub fn line_point(line: OrientedLine, r: f64) -> SpacePoint {
    let OrientedLine { xi, eta } = line;
    let xx = xi.norm_sqr();
    let denom = (1.0 + xx) * (1.0 + xx);
    let z = (2.0 * (eta - eta.conj() * xi * xi) + 2.0 * xi * (1.0 + xx) * r) / denom;
    let t = (-2.0 * (eta * xi.conj() + eta.conj() * xi).re + (1.0 - xx * xx) * r) / denom;
    SpacePoint { z, t }
}

/// Unit direction of the lines with direction coordinate `xi`.
pub fn direction(xi: Complex64) -> [f64; 3] {
    let xx = xi.norm_sqr();
    let d = 1.0 + xx;
    [2.0 * xi.re / d, 2.0 * xi.im / d, (1.0 - xx) / d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let p = line_point(
            OrientedLine {
                xi: c(0., 0.),
                eta: c(0., 0.),
            },
            1.0,
        );
        assert_eq!(
            p,
            SpacePoint {
                z: c(0., 0.),
                t: 1.0
            }
        );
        let p = line_point(
            OrientedLine {
                xi: c(0., 0.),
                eta: c(1., 0.),
            },
            0.0,
        );
        assert_eq!(
            p,
            SpacePoint {
                z: c(2., 0.),
                t: 0.0
            }
        );
        let p = line_point(
            OrientedLine {
                xi: c(1., 0.),
                eta: c(0., 0.),
            },
            0.0,
        );
        assert_eq!(
            p,
            SpacePoint {
                z: c(0., 0.),
                t: 0.0
            }
        );
    }

    fn finite_complex() -> impl Strategy<Value = Complex64> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn moving_along_the_line(xi in finite_complex(), eta in finite_complex(),
                                 r in -5.0f64..5.0, s in -5.0f64..5.0) {
            let line = OrientedLine { xi, eta };
            let a = line_point(line, r).xyz();
            let b = line_point(line, s).xyz();
            let d = direction(xi);
            for k in 0..3 {
                prop_assert!((b[k] - a[k] - (s - r) * d[k]).abs() < 1e-12);
            }
        }

        #[test]
        fn linear_in_fibre_and_parameter(xi in finite_complex(), e1 in finite_complex(),
                                         e2 in finite_complex(), r1 in -5.0f64..5.0,
                                         r2 in -5.0f64..5.0, lam in -2.0f64..2.0) {
            let p = |eta: Complex64, r: f64| line_point(OrientedLine { xi, eta }, r);
            let origin = p(c(0., 0.), 0.0);
            let combo = p(e1 + e2 * lam, r1 + lam * r2);
            let a = p(e1, r1);
            let b = p(e2, r2);
            prop_assert!((combo.z - (a.z + (b.z - origin.z) * lam)).norm() < 1e-11);
            prop_assert!((combo.t - (a.t + lam * (b.t - origin.t))).abs() < 1e-11);
        }

        #[test]
        fn direction_is_unit(xi in finite_complex()) {
            let d = direction(xi);
            prop_assert!((d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - 1.0).abs() < 1e-14);
        }
    }
}
