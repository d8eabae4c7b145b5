//! Umbilic index as a winding number, non-degeneracy of the leading ∂̄F
//! layer, and end-to-end verification of I = K − N/2 with its bounds.

mod index;
mod nondegeneracy;
mod report;

pub use index::{
    dyadic_radii, index_at_origin, winding_number, windings_on_radii, HalfInteger, IndexEstimate,
    DEFAULT_N_THETA, N_THETA_CAP, SURFACE_RADII,
};
pub use nondegeneracy::{
    certify_no_zero, extract_pn, nondegeneracy, series_nondegeneracy, Nondegeneracy, GRID_CAP,
};
pub use report::{reconstruction_defect, verify, Diagnostics, UmbilicReport, VerifyOptions};
