//! Invariant measures on hyperplanes, half-spaces and horospheres, and Monte
//! Carlo estimators of the measure of carriers meeting a segment.
//!
//! Hyperplanes of `H^n_R` are `u = (sinh p, cosh p · ω)` with density
//! `cosh^{n-1}(p) dp dω`; horospheres of `H^n_F` are null vectors
//! `ξ = ρ(1, ω)` with density `ρ^{k(n+1)-3} dρ dω`. Samplers restrict both to
//! carriers at distance at most `R` from `x₀`, which covers every carrier that
//! meets a segment inside `B_R(x₀)`.

mod carriers;
mod estimate;
mod predicates;

pub use carriers::{
    horosphere_exponent, horosphere_measure, hyperplane_measure, sample_horosphere,
    sample_hyperplane, Horosphere, Hyperplane, OrientedHalfSpace,
};
pub use estimate::{
    anchored_pair, estimate_horosphere_crofton, estimate_m, estimate_symmetric_difference,
    halfspace_features, projective_crofton_estimate, ratios_agree, restriction_radius,
    sphere_features, sphere_halfspace_crofton, CroftonEstimate, EstimateFlag, HalfspaceFeatures,
    McConfig, BATCH, DEFAULT_MARGIN,
};
pub use predicates::{
    count_cosh_roots, count_horosphere_intersections, halfspace_contains, hyperplane_meets_segment,
    CoshRoots, Membership, SegmentOutcome, BOUNDARY_TOL,
};
