//! Polar-grid triangulations of surfaces parameterised by the normal direction.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::batch;
use crate::error::{Error, Result};
use crate::minitwistor::SpacePoint;

/// Triangles with area below this are considered degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_r: 32,
            n_theta: 64,
            r_max: 2.0,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_r == 0 || self.n_theta < 3 || !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(Error::InvalidInput(format!("bad grid {self:?}")));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.n_r * self.n_theta
    }

    /// Index of the vertex on ring `i` (1-based) at angle step `j`.
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        1 + (i - 1) * self.n_theta + j % self.n_theta
    }

    /// Chart parameters ξ in vertex order: the origin, then ring by ring.
    pub fn params(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.vertex_count());
        out.push(Complex64::new(0.0, 0.0));
        for i in 1..=self.n_r {
            let rho = self.r_max * i as f64 / self.n_r as f64;
            for j in 0..self.n_theta {
                out.push(Complex64::from_polar(
                    rho,
                    TAU * j as f64 / self.n_theta as f64,
                ));
            }
        }
        out
    }

    pub fn faces(&self) -> Vec<[usize; 3]> {
        let mut faces = Vec::with_capacity(self.n_theta * (2 * self.n_r - 1));
        for j in 0..self.n_theta {
            faces.push([0, self.vertex(1, j), self.vertex(1, j + 1)]);
        }
        for i in 1..self.n_r {
            for j in 0..self.n_theta {
                let (a, b) = (self.vertex(i, j), self.vertex(i, j + 1));
                let (c, d) = (self.vertex(i + 1, j), self.vertex(i + 1, j + 1));
                faces.push([a, c, d]);
                faces.push([a, d, b]);
            }
        }
        faces
    }

    pub fn is_outer(&self, vertex: usize) -> bool {
        vertex > 0 && (vertex - 1) / self.n_theta + 1 == self.n_r
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshGrid {
    pub vertices: Vec<SpacePoint>,
    /// Chart parameter of each vertex.
    pub params: Vec<Complex64>,
    pub faces: Vec<[usize; 3]>,
    pub grid: GridSpec,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Evaluates `embed` on the polar grid. Vertices are computed in parallel
/// when enabled; ordering is fixed by the grid.
pub fn mesh<E>(embed: E, grid: GridSpec) -> Result<MeshGrid>
where
    E: Fn(Complex64) -> Result<SpacePoint> + Sync + Send,
{
    grid.validate()?;
    let params = grid.params();
    let vertices = batch::par_map(&params, |&xi| {
        let p = embed(xi)?;
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::NonFiniteVertex { xi })
        }
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mesh = MeshGrid {
        vertices,
        params,
        faces: grid.faces(),
        grid,
    };
    if let Some(face) = mesh.degenerate_faces(DEGENERATE_AREA).first() {
        return Err(Error::InvalidInput(format!("degenerate triangle {face:?}")));
    }
    Ok(mesh)
}

impl MeshGrid {
    pub fn triangle_area(&self, [a, b, c]: [usize; 3]) -> f64 {
        let (pa, pb, pc) = (
            self.vertices[a].xyz(),
            self.vertices[b].xyz(),
            self.vertices[c].xyz(),
        );
        0.5 * norm(cross(sub(pb, pa), sub(pc, pa)))
    }

    pub fn degenerate_faces(&self, tol: f64) -> Vec<[usize; 3]> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| self.triangle_area(f) < tol)
            .collect()
    }

    /// Wavefront OBJ text: `v x y z` at 15 significant digits, then 1-based
    /// `f i j k` lines.
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(self.vertices.len() * 72 + self.faces.len() * 24);
        for v in &self.vertices {
            let [x, y, z] = v.xyz();
            let _ = writeln!(out, "v {x:.14e} {y:.14e} {z:.14e}");
        }
        for [a, b, c] in &self.faces {
            let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
        }
        out
    }
}

/// Vertices and faces read back from OBJ text (0-based faces).
#[derive(Debug, Clone, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

pub fn parse_obj(text: &str) -> Result<ObjMesh> {
    let mut mesh = ObjMesh {
        vertices: Vec::new(),
        faces: Vec::new(),
    };
    for (k, line) in text.lines().enumerate() {
        let bad = |reason: &str| Error::Obj {
            line: k + 1,
            reason: reason.to_string(),
        };
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let xs = parts
                    .map(|s| s.parse::<f64>().map_err(|_| bad("bad coordinate")))
                    .collect::<Result<Vec<_>>>()?;
                if xs.len() != 3 {
                    return Err(bad("expected three coordinates"));
                }
                mesh.vertices.push([xs[0], xs[1], xs[2]]);
            }
            Some("f") => {
                let ids = parts
                    .map(|s| {
                        let head = s.split('/').next().unwrap_or(s);
                        head.parse::<usize>().map_err(|_| bad("bad index"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if ids.len() != 3 || ids.iter().any(|&i| i == 0 || i > mesh.vertices.len()) {
                    return Err(bad("expected three in-range indices"));
                }
                mesh.faces.push([ids[0] - 1, ids[1] - 1, ids[2] - 1]);
            }
            Some(t) if t.starts_with('#') => {}
            None => {}
            Some(_) => return Err(bad("unsupported statement")),
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfacegen::{ellipsoid_embed, EllipsoidParams};

    #[test]
    fn grid_sizes_and_indices() {
        let g = GridSpec {
            n_r: 3,
            n_theta: 8,
            r_max: 1.0,
        };
        assert_eq!(g.params().len(), 25);
        let faces = g.faces();
        assert_eq!(faces.len(), 8 + 2 * 2 * 8);
        assert!(faces.iter().flatten().all(|&i| i < 25));
        assert!(g.is_outer(24) && g.is_outer(17) && !g.is_outer(16) && !g.is_outer(0));
    }

    #[test]
    fn sphere_mesh_radius() {
        let p = EllipsoidParams::new(1.0, 1.0, 1.0).unwrap();
        let m = mesh(
            |xi| ellipsoid_embed(&p, xi),
            GridSpec {
                n_r: 10,
                n_theta: 24,
                r_max: 2.0,
            },
        )
        .unwrap();
        assert_eq!(m.vertices.len(), 241);
        for v in &m.vertices {
            assert!((norm(v.xyz()) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn obj_round_trip() {
        let p = EllipsoidParams::new(3.0, 2.0, 1.0).unwrap();
        let m = mesh(
            |xi| ellipsoid_embed(&p, xi),
            GridSpec {
                n_r: 4,
                n_theta: 12,
                r_max: 2.0,
            },
        )
        .unwrap();
        let back = parse_obj(&m.to_obj()).unwrap();
        assert_eq!(back.faces, m.faces);
        for (a, b) in back.vertices.iter().zip(&m.vertices) {
            let b = b.xyz();
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-14 * b[k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn obj_errors() {
        assert!(parse_obj("v 1 2\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 1 2 3\n").is_err());
        assert!(parse_obj("x\n").is_err());
    }

    #[test]
    fn non_finite_vertex_rejected() {
        let r = mesh(
            |xi| {
                Ok(SpacePoint {
                    z: xi,
                    t: if xi.norm() > 0.9 { f64::NAN } else { 0.0 },
                })
            },
            GridSpec {
                n_r: 2,
                n_theta: 4,
                r_max: 1.0,
            },
        );
        assert!(matches!(r, Err(Error::NonFiniteVertex { .. })));
    }
}
