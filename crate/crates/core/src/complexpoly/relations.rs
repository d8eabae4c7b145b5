//! The coefficient relations singled out by the Lagrangian condition, and the
//! N+2 real-parameter family of profiles satisfying them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::profile::WeightedSymmetricProfile;
use crate::error::{Error, Result};

pub const DEFAULT_RELATION_TOL: f64 = 1e-12;

/// Defects of the relations |Δ_{N−2}| = 1 and Δ_n = conj(Δ_{N−2−n})·Δ_{N−2}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangianCheckResult {
    pub modulus_defect: f64,
    /// Indexed by n − 1 for 1 ≤ n ≤ l − 1.
    pub relation_defects: Vec<f64>,
    /// Even N only: |Δ_l − conj(Δ_l)·Δ_{N−2}|.
    pub midline_defect: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl LagrangianCheckResult {
    pub fn max_defect(&self) -> f64 {
        self.relation_defects
            .iter()
            .chain(self.midline_defect.iter())
            .fold(self.modulus_defect, |a, &b| a.max(b))
    }
}

pub fn check_relations(
    profile: &WeightedSymmetricProfile,
    tol: f64,
) -> Result<LagrangianCheckResult> {
    let n = profile.degree();
    if n < 2 {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "relations reference Δ_{N−2}",
        });
    }
    let l = profile.half_index();
    let pivot = profile.delta_at(n - 2);
    let modulus_defect = (pivot.norm() - 1.0).abs();
    let relation_defects = (1..l)
        .map(|k| (profile.delta_at(k) - profile.delta_at(n - 2 - k).conj() * pivot).norm())
        .collect::<Vec<_>>();
    let midline_defect = n
        .is_multiple_of(2)
        .then(|| (profile.delta_at(l) - profile.delta_at(l).conj() * pivot).norm());
    let mut result = LagrangianCheckResult {
        modulus_defect,
        relation_defects,
        midline_defect,
        tolerance: tol,
        pass: false,
    };
    result.pass = result.max_defect() <= tol;
    Ok(result)
}

/// Free parameters of the constrained family of degree N ≥ 3.
///
/// `free` lists Δ_k for the free indices in increasing order: for odd
/// N = 2l+1 these are l..=N−3 followed by N−1, N; for even N = 2l+2 they
/// are l+1..=N−3 followed by N−1, N. `midline` is the real t with
/// Δ_l = t·e^{iA/2} and must be present exactly when N is even.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstrainedParams {
    pub phase: f64,
    pub midline: Option<f64>,
    #[serde(with = "crate::pairs")]
    pub free: Vec<Complex64>,
}

/// Indices of the free complex entries for degree `n`.
pub fn free_indices(n: usize) -> Vec<usize> {
    let l = (n - 1) / 2;
    let first = if n % 2 == 1 { l } else { l + 1 };
    (first..=n.saturating_sub(3)).chain([n - 1, n]).collect()
}

pub fn constrained_profile(
    n: usize,
    params: &ConstrainedParams,
) -> Result<WeightedSymmetricProfile> {
    if n < 3 {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "the constrained sampler requires N ≥ 3",
        });
    }
    let slots = free_indices(n);
    if params.free.len() != slots.len() {
        return Err(Error::InvalidInput(format!(
            "degree {n} expects {} free complex entries, got {}",
            slots.len(),
            params.free.len()
        )));
    }
    let even = n.is_multiple_of(2);
    if even != params.midline.is_some() {
        return Err(Error::InvalidInput(
            "midline parameter must be given exactly for even degree".into(),
        ));
    }
    let l = (n - 1) / 2;
    let pivot = Complex64::from_polar(1.0, params.phase);
    let mut delta = vec![Complex64::new(0.0, 0.0); n + 1];
    delta[0] = Complex64::new(1.0, 0.0);
    delta[n - 2] = pivot;
    for (&k, &v) in slots.iter().zip(&params.free) {
        delta[k] = v;
    }
    if let Some(t) = params.midline {
        delta[l] = Complex64::from_polar(t, params.phase / 2.0);
    }
    for k in 1..l {
        delta[k] = delta[n - 2 - k].conj() * pivot;
    }
    WeightedSymmetricProfile::new(delta.split_off(1))
}

/// Draws the free parameters: phase uniform on [−π, π), midline uniform on
/// [−1, 1], free complex entries uniform in the closed unit disk.
pub fn draw_params<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ConstrainedParams> {
    if n < 3 {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "the constrained sampler requires N ≥ 3",
        });
    }
    let phase = rng.gen_range(-PI..PI);
    let midline = n.is_multiple_of(2).then(|| rng.gen_range(-1.0..=1.0));
    let free = free_indices(n)
        .into_iter()
        .map(|_| {
            let radius = rng.gen::<f64>().sqrt();
            Complex64::from_polar(radius, rng.gen_range(-PI..PI))
        })
        .collect();
    Ok(ConstrainedParams {
        phase,
        midline,
        free,
    })
}

pub fn sample_constrained<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<WeightedSymmetricProfile> {
    let params = draw_params(n, rng)?;
    constrained_profile(n, &params)
}
