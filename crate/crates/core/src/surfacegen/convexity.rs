//! Discrete convexity check: every one-ring neighbour must lie strictly below
//! the supporting plane whose outward normal is the vertex's direction.

use std::collections::BTreeSet;

use serde::Serialize;

use super::mesh::{mesh, GridSpec, MeshGrid};
use super::surface::UmbilicSurface;
use crate::error::{Error, Result};
use crate::minitwistor::direction;

/// Largest multiple of the starting constant tried by the auto-C search.
pub const AUTO_C_CAP: f64 = 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexityReport {
    /// min over interior vertices and neighbours of −(q − p)·n.
    pub min_margin: f64,
    pub worst_vertex: usize,
    pub interior_vertices: usize,
    pub pass: bool,
}

pub fn convexity_probe(mesh: &MeshGrid) -> ConvexityReport {
    let n = mesh.vertices.len();
    let mut ring: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &[a, b, c] in &mesh.faces {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            ring[u].insert(v);
            ring[v].insert(u);
        }
    }
    let mut min_margin = f64::INFINITY;
    let mut worst_vertex = 0;
    let mut interior_vertices = 0;
    for (i, nbrs) in ring.iter().enumerate() {
        if mesh.grid.is_outer(i) {
            continue;
        }
        interior_vertices += 1;
        let normal = direction(mesh.params[i]);
        let p = mesh.vertices[i].xyz();
        for &j in nbrs {
            let q = mesh.vertices[j].xyz();
            let margin = -((q[0] - p[0]) * normal[0]
                + (q[1] - p[1]) * normal[1]
                + (q[2] - p[2]) * normal[2]);
            if margin < min_margin {
                min_margin = margin;
                worst_vertex = i;
            }
        }
    }
    ConvexityReport {
        min_margin,
        worst_vertex,
        interior_vertices,
        pass: min_margin > 0.0,
    }
}

/// Ten times the largest |F| over the grid parameters (at least 1).
pub fn default_support_constant(surface: &UmbilicSurface, grid: &GridSpec) -> f64 {
    let peak = grid
        .params()
        .iter()
        .map(|&xi| surface.eval_f(xi).norm())
        .fold(0.0, f64::max);
    (10.0 * peak).max(1.0)
}

/// Meshes `surface` with its own constant and runs the probe.
pub fn probe_surface(
    surface: &UmbilicSurface,
    grid: GridSpec,
) -> Result<(MeshGrid, ConvexityReport)> {
    let m = mesh(|xi| Ok(surface.embed(xi)), grid)?;
    let report = convexity_probe(&m);
    Ok((m, report))
}

/// Doubles the support constant from `start` until the probe passes or the
/// constant exceeds `AUTO_C_CAP · start`.
pub fn auto_support_constant(
    surface: &UmbilicSurface,
    grid: GridSpec,
    start: f64,
) -> Result<(UmbilicSurface, MeshGrid, ConvexityReport)> {
    if start.is_nan() || start <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "starting constant must be positive, got {start}"
        )));
    }
    let mut c = start;
    let mut last_margin = f64::NEG_INFINITY;
    while c <= AUTO_C_CAP * start {
        let candidate = surface.with_support_constant(c);
        let (m, report) = probe_surface(&candidate, grid)?;
        if report.pass {
            return Ok((candidate, m, report));
        }
        last_margin = report.min_margin;
        c *= 2.0;
    }
    Err(Error::NotConvex {
        constant: c / 2.0,
        margin: last_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexpoly::WeightedSymmetricProfile;
    use crate::surfacegen::{build_surface, ellipsoid_embed, EllipsoidParams};

    fn cubic(c: f64) -> UmbilicSurface {
        let p = WeightedSymmetricProfile::from_pairs(&[(1., 0.), (0., 0.), (0., 0.)]).unwrap();
        build_surface(&p, 1.0, c).unwrap()
    }

    #[test]
    fn sphere_passes() {
        let p = EllipsoidParams::new(1.0, 1.0, 1.0).unwrap();
        let m = mesh(|xi| ellipsoid_embed(&p, xi), GridSpec::default()).unwrap();
        let r = convexity_probe(&m);
        assert!(r.pass && r.min_margin > 0.0);
        assert_eq!(r.interior_vertices, 1 + 31 * 64);
    }

    #[test]
    fn cubic_with_small_constant_fails() {
        let (_, r) = probe_surface(&cubic(0.01), GridSpec::default()).unwrap();
        assert!(!r.pass, "{r:?}");
    }

    #[test]
    fn cubic_needs_large_constant_far_out() {
        let grid = GridSpec::default();
        let (_, r) = probe_surface(&cubic(10.0), grid).unwrap();
        assert!(!r.pass);
        let (_, r) = probe_surface(&cubic(10.0), GridSpec { r_max: 0.5, ..grid }).unwrap();
        assert!(r.pass, "{r:?}");
        let c = default_support_constant(&cubic(0.0), &grid);
        let (_, r) = probe_surface(&cubic(c), grid).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn auto_mode_finds_a_constant() {
        let (s, _, r) = auto_support_constant(&cubic(0.0), GridSpec::default(), 10.0).unwrap();
        assert!(r.pass);
        assert!(s.support_constant() > 100.0 && s.support_constant() <= 10240.0);
    }

    #[test]
    fn auto_mode_respects_cap() {
        let err = auto_support_constant(&cubic(0.0), GridSpec::default(), 0.01).unwrap_err();
        assert!(matches!(err, Error::NotConvex { .. }));
    }
}
