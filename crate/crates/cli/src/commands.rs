use serde::Serialize;

use umbilic_core::complexpoly::{check_relations, WeightedSymmetricProfile};
use umbilic_core::minitwistor::{dbar, DEFAULT_STEP};
use umbilic_core::surfacegen::{
    auto_support_constant, build_surface, convexity_probe, default_support_constant,
    ellipsoid_dbar_f, ellipsoid_embed, ellipsoid_f, mesh, mobius_recenter, probe_surface,
    triaxial_umbilic_points, ConvexityReport, EllipsoidParams, GridSpec, MeshGrid, UmbilicSurface,
};
use umbilic_core::sweep::{generate, run_sweep, verify_batch, Sweep, SweepRow};
use umbilic_core::umbilic::{
    dyadic_radii, index_at_origin, IndexEstimate, UmbilicReport, SURFACE_RADII,
};
use umbilic_core::{Complex64, Error, ErrorClass};

use crate::io::{emit, read_one_profile, read_profiles, to_json};
use crate::{exit_code, Exit, Format, GenArgs, IndexArgs, SurfaceArgs, SweepArgs, VerifyArgs};

pub fn gen(a: GenArgs) -> Result<u8, Exit> {
    let opts = a.common.verify_options();
    let sampled = generate(
        a.degree,
        a.count,
        a.seed,
        a.common.guard,
        &opts.root_finder(),
    )?;
    let profiles: Vec<&WeightedSymmetricProfile> = sampled.iter().map(|s| &s.profile).collect();
    emit(&a.out, &to_json(&profiles))?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(untagged)]
enum VerifyEntry<'a> {
    Report(&'a UmbilicReport),
    Failure {
        error: String,
        class: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        relation_defect: Option<f64>,
        profile: &'a WeightedSymmetricProfile,
    },
}

fn class_name(c: ErrorClass) -> &'static str {
    match c {
        ErrorClass::Input => "input",
        ErrorClass::Numerical => "numerical",
        ErrorClass::Verification => "verification",
    }
}

/// Input errors dominate numerical ones, which dominate verification failures.
fn batch_exit<'a>(outcomes: impl Iterator<Item = &'a Result<UmbilicReport, Error>>) -> u8 {
    let mut code = 0;
    for o in outcomes {
        let c = match o {
            Ok(r) if r.identity_ok && r.main_bound_ok => 0,
            Ok(_) => 1,
            Err(e) => exit_code(e.class()),
        };
        let rank = |c: u8| [0, 1, 3, 2][c as usize];
        if rank(c) > rank(code) {
            code = c;
        }
    }
    code
}

pub fn verify(a: VerifyArgs) -> Result<u8, Exit> {
    let profiles = read_profiles(&a.input)?;
    let opts = a.common.verify_options();
    let outcomes = verify_batch(&profiles, &opts);
    let code = batch_exit(outcomes.iter());
    let text = match a.format {
        Format::Json => {
            let entries: Vec<VerifyEntry> = outcomes
                .iter()
                .zip(&profiles)
                .map(|(o, p)| match o {
                    Ok(r) => VerifyEntry::Report(r),
                    Err(e) => VerifyEntry::Failure {
                        error: e.to_string(),
                        class: class_name(e.class()),
                        relation_defect: check_relations(p, opts.relation_tol)
                            .ok()
                            .map(|c| c.max_defect()),
                        profile: p,
                    },
                })
                .collect();
            to_json(&entries)
        }
        Format::Csv => {
            let rows = outcomes
                .into_iter()
                .zip(&profiles)
                .enumerate()
                .map(|(i, (outcome, p))| SweepRow {
                    degree: p.degree(),
                    sample: i as u64,
                    resamples: 0,
                    outcome,
                    micros: 0,
                })
                .collect();
            Sweep { rows }.to_csv(false)
        }
        Format::Obj => {
            return Err(Exit {
                code: 2,
                message: "verify writes json or csv".into(),
            })
        }
    };
    emit(&a.out, &text)?;
    Ok(code)
}

#[derive(Serialize)]
struct SurfaceSummary<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    surface: Option<&'a UmbilicSurface>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ellipsoid: Option<EllipsoidParams>,
    grid: GridSpec,
    vertices: usize,
    faces: usize,
    convexity: ConvexityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadric_residual: Option<f64>,
}

pub fn surface(a: SurfaceArgs) -> Result<u8, Exit> {
    let grid = a.grid.unwrap_or_default();
    let (built, m, report, ellipsoid, quadric): (
        Option<UmbilicSurface>,
        MeshGrid,
        ConvexityReport,
        _,
        _,
    ) = match (&a.input, a.ellipsoid) {
        (Some(path), None) => {
            let profile = read_one_profile(path)?;
            let s = build_surface(&profile, a.common.scale, 0.0)?;
            let c = a
                .common
                .constant_c
                .unwrap_or_else(|| default_support_constant(&s, &grid));
            let s = s.with_support_constant(c);
            let (s, m, r) = if a.auto_c {
                auto_support_constant(&s, grid, c)?
            } else {
                let (m, r) = probe_surface(&s, grid)?;
                (s, m, r)
            };
            (Some(s), m, r, None, None)
        }
        (None, Some([a1, a2, a3])) => {
            let p = EllipsoidParams::new(a1, a2, a3)?;
            let m = mesh(|xi| ellipsoid_embed(&p, xi), grid)?;
            let r = convexity_probe(&m);
            let q = m
                .vertices
                .iter()
                .map(|v| p.quadric_residual(v))
                .fold(0.0, f64::max);
            (None, m, r, Some(p), Some(q))
        }
        _ => {
            return Err(Exit {
                code: 2,
                message: "give exactly one of --in or --ellipsoid".into(),
            })
        }
    };
    let text = match a.format {
        Format::Obj => m.to_obj(),
        Format::Json => to_json(&SurfaceSummary {
            surface: built.as_ref(),
            ellipsoid,
            grid,
            vertices: m.vertices.len(),
            faces: m.faces.len(),
            convexity: report,
            quadric_residual: quadric,
        }),
        Format::Csv => {
            return Err(Exit {
                code: 2,
                message: "surface writes obj or json".into(),
            })
        }
    };
    emit(&a.out, &text)?;
    eprintln!(
        "convexity: {} (min margin {:e}, {} interior vertices)",
        if report.pass { "pass" } else { "FAIL" },
        report.min_margin,
        report.interior_vertices
    );
    Ok(if report.pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct IndexEntry {
    source: String,
    /// Chart point moved to the origin, as [re, im].
    center: [f64; 2],
    index: String,
    twice_index: i64,
    windings: Vec<(f64, i64)>,
}

impl IndexEntry {
    fn new(source: String, center: Complex64, est: IndexEstimate) -> Self {
        IndexEntry {
            source,
            center: [center.re, center.im],
            index: est.index.to_string(),
            twice_index: est.index.twice(),
            windings: est.windings,
        }
    }
}

pub fn index(a: IndexArgs) -> Result<u8, Exit> {
    let n_theta = a.common.tol.n_theta;
    let mut entries = Vec::new();
    match (&a.input, a.ellipsoid) {
        (Some(path), None) => {
            for (i, profile) in read_profiles(path)?.iter().enumerate() {
                let s =
                    build_surface(profile, a.common.scale, a.common.constant_c.unwrap_or(10.0))?;
                let est = index_at_origin(|xi| Ok(s.eval_dbar_f(xi)), &SURFACE_RADII, n_theta)?;
                entries.push(IndexEntry::new(
                    format!("profile {i} (N={})", profile.degree()),
                    Complex64::new(0.0, 0.0),
                    est,
                ));
            }
        }
        (None, Some([a1, a2, a3])) => {
            let p = EllipsoidParams::new(a1, a2, a3)?;
            let centers = if a.auto_umbilic {
                triaxial_umbilic_points(&p)?
            } else {
                vec![Complex64::new(a.recenter.unwrap_or(0.0), 0.0)]
            };
            let source = format!("ellipsoid ({a1}, {a2}, {a3})");
            for c in centers {
                let est = if c.re == 0.0 {
                    index_at_origin(|xi| ellipsoid_dbar_f(&p, xi), &dyadic_radii(), n_theta)?
                } else {
                    let g = mobius_recenter(|xi| ellipsoid_f(&p, xi), c.re);
                    index_at_origin(|w| dbar(&g, w, DEFAULT_STEP), &dyadic_radii(), n_theta)?
                };
                entries.push(IndexEntry::new(source.clone(), c, est));
            }
        }
        _ => {
            return Err(Exit {
                code: 2,
                message: "give exactly one of --in or --ellipsoid".into(),
            })
        }
    }
    emit(&a.out, &to_json(&entries))?;
    Ok(0)
}

pub fn sweep(a: SweepArgs) -> Result<u8, Exit> {
    let degrees = &a.degree.0;
    if let Some(&n) = degrees.iter().find(|&&n| n < 3) {
        return Err(Error::UnsupportedDegree {
            degree: n,
            reason: "the constrained sampler requires N ≥ 3",
        }
        .into());
    }
    let opts = a.common.verify_options();
    let result = run_sweep(degrees, a.count, a.seed, &opts);
    emit(&a.out, &result.to_csv(a.timing))?;
    let code = batch_exit(result.rows.iter().map(|r| &r.outcome));
    Ok(code)
}
