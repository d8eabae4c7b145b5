//! Constrained complex polynomials and the umbilic points of convex surfaces
//! built from them.
//!
//! A profile of weighted symmetric coefficients satisfying the Lagrangian
//! coefficient relations determines a convex real-analytic surface whose
//! umbilic at the chart origin has index I = K − N/2, where K counts the
//! polynomial's roots inside the unit circle. This crate builds that surface,
//! measures I as a winding number, counts K two ways, and checks the identity
//! together with the bounds I ≤ 1 and K ≤ 1 + N/2.

pub mod batch;
pub mod complexpoly;
pub mod error;
pub mod minitwistor;
mod pairs;
pub mod phase;
pub mod surfacegen;
pub mod sweep;
pub mod umbilic;

pub use error::{Error, ErrorClass, Result};
pub use num_complex::Complex64;
