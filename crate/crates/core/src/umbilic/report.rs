use serde::{Deserialize, Serialize};

use super::index::{index_at_origin, DEFAULT_N_THETA, SURFACE_RADII};
use super::nondegeneracy::{extract_pn, nondegeneracy};
use crate::complexpoly::{
    argument_principle_count, check_relations, count_inside, poly_from_profile, MonicPolynomial,
    RootFinder, WeightedSymmetricProfile, DEFAULT_GUARD, DEFAULT_RELATION_TOL,
};
use crate::error::{Error, Result};
use crate::surfacegen::build_surface_with_tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub guard: f64,
    pub scale: f64,
    pub support_constant: f64,
    pub relation_tol: f64,
    pub root_tol: f64,
    pub max_iter: usize,
    pub cluster_radius: f64,
    pub arg_samples: usize,
    pub radii: Vec<f64>,
    pub n_theta: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let finder = RootFinder::default();
        VerifyOptions {
            guard: DEFAULT_GUARD,
            scale: 1.0,
            support_constant: 10.0,
            relation_tol: DEFAULT_RELATION_TOL,
            root_tol: finder.tol,
            max_iter: finder.max_iter,
            cluster_radius: finder.cluster_radius,
            arg_samples: 1024,
            radii: SURFACE_RADII.to_vec(),
            n_theta: DEFAULT_N_THETA,
        }
    }
}

impl VerifyOptions {
    pub fn root_finder(&self) -> RootFinder {
        RootFinder {
            tol: self.root_tol,
            max_iter: self.max_iter,
            cluster_radius: self.cluster_radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub radii: Vec<f64>,
    pub windings: Vec<i64>,
    pub n_theta: usize,
    pub gn_grid_points: usize,
    pub gn_lower_bound: f64,
    pub arg_samples: usize,
    pub relation_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UmbilicReport {
    pub degree: usize,
    pub index: f64,
    pub twice_index: i64,
    pub winding: i64,
    pub k: usize,
    pub k_argument: usize,
    pub counters_agree: bool,
    pub min_gn: f64,
    pub circle_gap: f64,
    /// max_k |extracted c_k − profile c_k| / max(1, max_k |profile c_k|).
    pub reconstruction_defect: f64,
    pub identity_ok: bool,
    pub hamburger_ok: bool,
    pub main_bound_ok: bool,
    pub diagnostics: Diagnostics,
    pub profile: WeightedSymmetricProfile,
}

impl UmbilicReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.hamburger_ok && self.main_bound_ok && self.counters_agree
    }
}

pub fn reconstruction_defect(extracted: &MonicPolynomial, reference: &MonicPolynomial) -> f64 {
    let scale = reference.max_coeff_modulus().max(1.0);
    extracted
        .coeffs()
        .iter()
        .zip(reference.coeffs())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Builds the surface of `profile`, measures its umbilic index, counts the
/// interior roots two ways and evaluates the identity and both bounds.
pub fn verify(profile: &WeightedSymmetricProfile, opts: &VerifyOptions) -> Result<UmbilicReport> {
    let n = profile.degree();
    let relations = check_relations(profile, opts.relation_tol)?;
    if !relations.pass {
        return Err(Error::RelationsFailed {
            max_defect: relations.max_defect(),
            tolerance: opts.relation_tol,
        });
    }
    let surface = build_surface_with_tol(
        profile,
        opts.scale,
        opts.support_constant,
        opts.relation_tol,
    )?;

    let poly = poly_from_profile(profile);
    let roots = opts.root_finder().solve(&poly)?;
    let k = count_inside(&roots, opts.guard)?;
    let k_argument = argument_principle_count(&poly, opts.arg_samples)?;

    let extracted = extract_pn(&surface)?;
    let nd = nondegeneracy(&surface)?;
    let est = index_at_origin(|xi| Ok(surface.eval_dbar_f(xi)), &opts.radii, opts.n_theta)?;
    let twice_index = est.index.twice();

    let identity_ok = twice_index == 2 * k as i64 - n as i64;
    let hamburger_ok = twice_index <= 2;
    let main_bound_ok = 2 * k <= 2 + n;
    if identity_ok && hamburger_ok != main_bound_ok {
        unreachable!("bounds disagree although I = K - N/2 holds");
    }

    Ok(UmbilicReport {
        degree: n,
        index: est.index.value(),
        twice_index,
        winding: est.winding(),
        k,
        k_argument,
        counters_agree: k == k_argument,
        min_gn: nd.min_gn,
        circle_gap: roots.circle_gap,
        reconstruction_defect: reconstruction_defect(&extracted, &poly),
        identity_ok,
        hamburger_ok,
        main_bound_ok,
        diagnostics: Diagnostics {
            radii: est.windings.iter().map(|w| w.0).collect(),
            windings: est.windings.iter().map(|w| w.1).collect(),
            n_theta: opts.n_theta,
            gn_grid_points: nd.grid_points,
            gn_lower_bound: nd.lower_bound,
            arg_samples: opts.arg_samples,
            relation_defect: relations.max_defect(),
        },
        profile: profile.clone(),
    })
}
