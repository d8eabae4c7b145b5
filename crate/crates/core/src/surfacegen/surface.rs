use num_complex::Complex64;
use serde::Serialize;

use crate::complexpoly::{
    binomial, check_relations, WeightedSymmetricProfile, DEFAULT_RELATION_TOL,
};
use crate::error::{Error, Result};
use crate::minitwistor::{line_point, OrientedLine, SectionSeries, SpacePoint};

/// A monomial coefficient·ξ^p·ξ̄^q.
type Monomial = (Complex64, u32, u32);

fn eval_monomials(terms: &[Monomial], xi: Complex64) -> Complex64 {
    let xb = xi.conj();
    terms
        .iter()
        .map(|&(a, p, q)| a * xi.powu(p) * xb.powu(q))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// The convex surface whose lowest-order ∂̄F layer reproduces a constrained
/// polynomial, with an isolated umbilic of order N at ξ = 0.
///
/// Only the coefficients A_{n,N−n+1} for n ≤ l+1 (and the real middle
/// coefficient A_{l+2,l+1} for even N) are stored; every other coefficient of
/// F follows from them.
#[derive(Debug, Clone, Serialize)]
pub struct UmbilicSurface {
    degree: usize,
    parity: Parity,
    l: usize,
    #[serde(with = "crate::pairs")]
    a_low: Vec<Complex64>,
    a_mid: Option<f64>,
    scale: f64,
    /// A with Δ_{N−2} = e^{iA}.
    phase: f64,
    #[serde(with = "crate::pairs::one")]
    a_n1: Complex64,
    support_constant: f64,
    #[serde(skip)]
    section: Vec<Monomial>,
    #[serde(skip)]
    support: Vec<Monomial>,
}

/// A_{N−k,k+1} = C(N,k)/(k+1) · A_{N1} · Δ_k.
fn top_coefficient(profile: &WeightedSymmetricProfile, a_n1: Complex64, k: usize) -> Complex64 {
    let n = profile.degree();
    a_n1 * profile.delta_at(k) * (binomial(n, k) / (k + 1) as f64)
}

pub fn build_surface(
    profile: &WeightedSymmetricProfile,
    scale: f64,
    c: f64,
) -> Result<UmbilicSurface> {
    build_surface_with_tol(profile, scale, c, DEFAULT_RELATION_TOL)
}

pub fn build_surface_with_tol(
    profile: &WeightedSymmetricProfile,
    scale: f64,
    c: f64,
    tol: f64,
) -> Result<UmbilicSurface> {
    let n = profile.degree();
    let check = check_relations(profile, tol)?;
    if !check.pass {
        return Err(Error::RelationsFailed {
            max_defect: check.max_defect(),
            tolerance: tol,
        });
    }
    if !(scale > 0.0 && scale.is_finite()) || !c.is_finite() {
        return Err(Error::InvalidInput(format!(
            "scale {scale} / constant {c} out of range"
        )));
    }
    let l = profile.half_index();
    let phase = profile.delta_at(n - 2).arg();
    let a_n1 = Complex64::from_polar(scale, -phase / 2.0);

    let a_low = (0..=l + 1)
        .map(|j| top_coefficient(profile, a_n1, n - j))
        .collect();
    let parity = if n.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let a_mid = match parity {
        Parity::Odd => None,
        Parity::Even => {
            let mid = top_coefficient(profile, a_n1, l);
            if mid.im.abs() > tol * mid.norm().max(1.0) {
                return Err(Error::NonRealMidline { imag: mid.im });
            }
            Some(mid.re)
        }
    };
    let mut surface = UmbilicSurface {
        degree: n,
        parity,
        l,
        a_low,
        a_mid,
        scale,
        phase,
        a_n1,
        support_constant: c,
        section: Vec::new(),
        support: Vec::new(),
    };
    surface.section = surface
        .section_series()
        .iter()
        .map(|((p, q), a)| (a, p as u32, q as u32))
        .collect();
    surface.support = surface.support_terms();
    Ok(surface)
}

impl UmbilicSurface {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn half_index(&self) -> usize {
        self.l
    }

    /// A_{n,N−n+1} for n = 0..=l+1.
    pub fn a_low(&self) -> &[Complex64] {
        &self.a_low
    }

    pub fn a_mid(&self) -> Option<f64> {
        self.a_mid
    }

    pub fn a_n1(&self) -> Complex64 {
        self.a_n1
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn support_constant(&self) -> f64 {
        self.support_constant
    }

    /// Same surface moved to the parallel surface with constant `c`.
    pub fn with_support_constant(&self, c: f64) -> Self {
        UmbilicSurface {
            support_constant: c,
            ..self.clone()
        }
    }

    /// The full (finite) power series of F.
    pub fn section_series(&self) -> SectionSeries {
        let n = self.degree;
        let mut s = SectionSeries::new();
        for (j, &a) in self.a_low.iter().enumerate() {
            let d = (n - j + 2) as f64;
            s.add(j, n - j + 1, a);
            s.add(j + 1, n - j + 2, a * ((n - j + 1) as f64 / d));
            if j >= 1 {
                s.add(n - j + 2, j - 1, a.conj() * (j as f64 / d));
            }
            if j != 1 {
                s.add(n - j + 3, j, a.conj() * ((j as f64 - 1.0) / d));
            }
        }
        if let Some(mid) = self.a_mid {
            let l = self.l;
            s.add(l + 2, l + 1, Complex64::new(mid, 0.0));
            s.add(
                l + 3,
                l + 2,
                Complex64::new(mid * (l + 1) as f64 / (l + 2) as f64, 0.0),
            );
        }
        s
    }

    /// Terms of (r − C)·(1+|ξ|²)/2.
    fn support_terms(&self) -> Vec<Monomial> {
        let n = self.degree;
        let mut terms: Vec<Monomial> = Vec::new();
        for (j, &a) in self.a_low.iter().enumerate() {
            let d = (n - j + 2) as f64;
            terms.push((a / d, j as u32, (n - j + 2) as u32));
            terms.push((a.conj() / d, (n - j + 2) as u32, j as u32));
        }
        if let Some(mid) = self.a_mid {
            let k = (self.l + 2) as u32;
            terms.push((Complex64::new(mid / (self.l + 2) as f64, 0.0), k, k));
        }
        terms
    }

    pub fn eval_f(&self, xi: Complex64) -> Complex64 {
        eval_monomials(&self.section, xi)
    }

    /// Support function before discarding the (roundoff-level) imaginary part.
    pub fn eval_r_complex(&self, xi: Complex64) -> Complex64 {
        eval_monomials(&self.support, xi) * (2.0 / (1.0 + xi.norm_sqr())) + self.support_constant
    }

    pub fn eval_r(&self, xi: Complex64) -> f64 {
        self.eval_r_complex(xi).re
    }

    /// B₀..B_N with ∂̄F = (1+|ξ|²) Σ B_n ξⁿ ξ̄^{N−n}.
    pub fn effective_coeffs(&self) -> Vec<Complex64> {
        let n = self.degree;
        let l = self.l;
        (0..=n)
            .map(|k| {
                if k <= l + 1 {
                    self.a_low[k] * (n - k + 1) as f64
                } else if k == l + 2 && self.a_mid.is_some() {
                    Complex64::new(self.a_mid.unwrap_or(0.0) * (l + 1) as f64, 0.0)
                } else {
                    let w = ((n - k + 1) * (n - k + 2)) as f64 / k as f64;
                    self.a_low[n - k + 2].conj() * w
                }
            })
            .collect()
    }

    pub fn eval_dbar_f(&self, xi: Complex64) -> Complex64 {
        let n = self.degree as u32;
        let xb = xi.conj();
        let layer: Complex64 = self
            .effective_coeffs()
            .iter()
            .enumerate()
            .map(|(k, &b)| b * xi.powu(k as u32) * xb.powu(n - k as u32))
            .sum();
        layer * (1.0 + xi.norm_sqr())
    }

    /// Point of the surface whose outward normal has direction coordinate `xi`.
    pub fn embed(&self, xi: Complex64) -> SpacePoint {
        line_point(
            OrientedLine {
                xi,
                eta: self.eval_f(xi),
            },
            self.eval_r(xi),
        )
    }
}
