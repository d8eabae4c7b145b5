//! Degree-N complex polynomials described by weighted symmetric coefficients,
//! the constrained family they form, and two independent counts of the roots
//! inside the unit circle.

mod profile;
mod relations;
mod roots;

pub use profile::{
    binomial, poly_from_profile, profile_from_poly, symmetric_from_roots, MonicPolynomial,
    WeightedSymmetricProfile,
};
pub use relations::{
    check_relations, constrained_profile, draw_params, free_indices, sample_constrained,
    ConstrainedParams, LagrangianCheckResult, DEFAULT_RELATION_TOL,
};
pub use roots::{
    argument_principle_count, count_inside, find_roots, RootFinder, RootSet, ARGUMENT_SAMPLE_CAP,
    DEFAULT_CLUSTER_RADIUS, DEFAULT_GUARD, DEFAULT_MAX_ITER, DEFAULT_ROOT_TOL,
};
