//! The space of oriented lines in R³ as the tangent bundle of the direction
//! sphere: coordinates, the Lagrangian condition on sections, and its
//! power-series form.

mod line;
mod series;
mod wirtinger;

pub use line::{direction, line_point, OrientedLine, SpacePoint};
pub use series::{
    check_series_conditions, fourier_g, ConditionDefect, ConditionReport, SectionSeries,
    TrigPolynomial,
};
pub use wirtinger::{
    check_lagrangian_pde, check_support_relation, dbar, probe_points, wirtinger, DEFAULT_STEP,
    SINGULAR_EXCLUSION,
};
