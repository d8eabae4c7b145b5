//! Surfaces in R³ given by a support function and its line-space section:
//! the umbilic surface built from a constrained profile and the ellipsoid
//! family, with meshing, OBJ export and a convexity probe.

mod convexity;
mod ellipsoid;
mod mesh;
mod surface;

pub use convexity::{
    auto_support_constant, convexity_probe, default_support_constant, probe_surface,
    ConvexityReport, AUTO_C_CAP,
};
pub use ellipsoid::{
    ellipsoid_dbar_f, ellipsoid_embed, ellipsoid_f, ellipsoid_f_r, ellipsoid_r, mobius_recenter,
    mobius_recenter_support, triaxial_umbilic_points, triaxial_umbilics, EllipsoidParams,
};
pub use mesh::{mesh, parse_obj, GridSpec, MeshGrid, ObjMesh, DEGENERATE_AREA};
pub use surface::{build_surface, build_surface_with_tol, Parity, UmbilicSurface};
