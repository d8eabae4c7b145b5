use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binomial coefficient as a float; exact for the degrees used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// A degree-N polynomial described by its weighted symmetric coefficients
/// Δ₁..Δ_N, with Δ₀ = 1 implicit.
///
/// The coefficient of ζ^{N−n} in the monic polynomial is C(N,n)·Δ_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct WeightedSymmetricProfile {
    delta: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    degree: usize,
    #[serde(with = "crate::pairs")]
    delta: Vec<Complex64>,
}

impl TryFrom<ProfileRepr> for WeightedSymmetricProfile {
    type Error = Error;

    fn try_from(repr: ProfileRepr) -> Result<Self> {
        if repr.degree != repr.delta.len() {
            return Err(Error::InvalidInput(format!(
                "degree {} but {} delta entries",
                repr.degree,
                repr.delta.len()
            )));
        }
        Self::new(repr.delta)
    }
}

impl From<WeightedSymmetricProfile> for ProfileRepr {
    fn from(p: WeightedSymmetricProfile) -> Self {
        ProfileRepr {
            degree: p.degree(),
            delta: p.delta,
        }
    }
}

impl WeightedSymmetricProfile {
    pub fn new(delta: Vec<Complex64>) -> Result<Self> {
        if delta.is_empty() {
            return Err(Error::UnsupportedDegree {
                degree: 0,
                reason: "a profile needs at least one coefficient",
            });
        }
        if delta
            .iter()
            .any(|d| !(d.re.is_finite() && d.im.is_finite()))
        {
            return Err(Error::InvalidInput("non-finite delta entry".into()));
        }
        Ok(Self { delta })
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.delta.len()
    }

    /// Δ₁..Δ_N.
    pub fn delta(&self) -> &[Complex64] {
        &self.delta
    }

    /// Δ_n for 0 ≤ n ≤ N, with Δ₀ = 1.
    pub fn delta_at(&self, n: usize) -> Complex64 {
        if n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.delta[n - 1]
        }
    }

    /// l = ⌊(N−1)/2⌋, so that N = 2l+1 or N = 2l+2.
    pub fn half_index(&self) -> usize {
        (self.degree() - 1) / 2
    }
}

/// Monic polynomial ζ^N + c_{N−1}ζ^{N−1} + … + c₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonicPolynomial {
    /// c₀..c_{N−1}.
    #[serde(with = "crate::pairs")]
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::UnsupportedDegree {
                degree: 0,
                reason: "monic polynomial of degree 0 has no roots",
            });
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of ζ^k, including the leading 1.
    pub fn coeff(&self, k: usize) -> Complex64 {
        if k == self.degree() {
            Complex64::new(1.0, 0.0)
        } else {
            self.coeffs[k]
        }
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// P(z) and P′(z) by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// x^N + Σ|c_k| x^k, the modulus majorant used for backward-error bounds.
    pub fn modulus_majorant(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(1.0, |acc, c| acc * x + c.norm())
    }
}

/// Weighted symmetric coefficients of the monic polynomial with the given
/// roots: Δ_n = (−1)^n e_n / C(N,n).
pub fn symmetric_from_roots(roots: &[Complex64]) -> Result<WeightedSymmetricProfile> {
    if roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    let n = roots.len();
    // e[k] = elementary symmetric polynomial of degree k
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, &r) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k] + e[k - 1] * r;
        }
    }
    let delta = (1..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            e[k] * (sign / binomial(n, k))
        })
        .collect();
    WeightedSymmetricProfile::new(delta)
}

/// Monic polynomial with c_{N−n} = C(N,n)·Δ_n.
pub fn poly_from_profile(profile: &WeightedSymmetricProfile) -> MonicPolynomial {
    let n = profile.degree();
    let coeffs = (0..n)
        .map(|k| profile.delta_at(n - k) * binomial(n, n - k))
        .collect();
    MonicPolynomial { coeffs }
}

/// Inverse of [`poly_from_profile`].
pub fn profile_from_poly(poly: &MonicPolynomial) -> WeightedSymmetricProfile {
    let n = poly.degree();
    let delta = (1..=n)
        .map(|k| poly.coeffs[n - k] / binomial(n, k))
        .collect();
    WeightedSymmetricProfile { delta }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), 3.0);
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(10, 5), 252.0);
        assert_eq!(binomial(2, 3), 0.0);
    }

    #[test]
    fn symmetric_examples() {
        let p = symmetric_from_roots(&[c(0., 0.), c(0., 0.), c(-3., 0.)]).unwrap();
        assert!(close(p.delta(), &[c(1., 0.), c(0., 0.), c(0., 0.)], 1e-15));

        let p = symmetric_from_roots(&[c(1., 0.); 3]).unwrap();
        assert!(close(
            p.delta(),
            &[c(-1., 0.), c(1., 0.), c(-1., 0.)],
            1e-15
        ));

        let p = symmetric_from_roots(&[c(0., 2.), c(0., -1.)]).unwrap();
        assert!(close(p.delta(), &[c(0., -0.5), c(2., 0.)], 1e-15));
    }

    #[test]
    fn empty_roots_rejected() {
        assert!(matches!(symmetric_from_roots(&[]), Err(Error::EmptyRoots)));
    }

    #[test]
    fn poly_examples() {
        let p = WeightedSymmetricProfile::from_pairs(&[(1., 0.), (0., 0.), (0., 0.)]).unwrap();
        assert_eq!(
            poly_from_profile(&p).coeffs(),
            &[c(0., 0.), c(0., 0.), c(3., 0.)]
        );

        let p = WeightedSymmetricProfile::from_pairs(&[(0., 0.), (1., 0.), (0., 0.), (0., 0.)])
            .unwrap();
        assert_eq!(
            poly_from_profile(&p).coeffs(),
            &[c(0., 0.), c(0., 0.), c(6., 0.), c(0., 0.)]
        );

        let p = WeightedSymmetricProfile::from_pairs(&[(0., 0.), (0.25, 0.)]).unwrap();
        assert_eq!(poly_from_profile(&p).coeffs(), &[c(0.25, 0.), c(0., 0.)]);
    }

    #[test]
    fn horner_derivative() {
        // z^3 + 3z^2 at z = 2: P = 20, P' = 3*4 + 6*2 = 24
        let p = MonicPolynomial::new(vec![c(0., 0.), c(0., 0.), c(3., 0.)]).unwrap();
        let (v, d) = p.eval_with_derivative(c(2., 0.));
        assert_eq!(v, c(20., 0.));
        assert_eq!(d, c(24., 0.));
        assert_eq!(p.modulus_majorant(2.0), 20.0);
    }

    #[test]
    fn profile_json_shape() {
        let p = WeightedSymmetricProfile::from_pairs(&[(0., 0.), (0.25, -1.)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":2,"delta":[[0.0,0.0],[0.25,-1.0]]}"#);
        let back: WeightedSymmetricProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"degree":3,"delta":[[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<WeightedSymmetricProfile>(bad).is_err());
    }

    #[test]
    fn poly_profile_inverse() {
        let p =
            WeightedSymmetricProfile::from_pairs(&[(0.3, -0.2), (1.0, 0.5), (-2.0, 0.1)]).unwrap();
        let back = profile_from_poly(&poly_from_profile(&p));
        assert!(close(back.delta(), p.delta(), 1e-15));
    }
}
