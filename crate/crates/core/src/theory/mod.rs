//! Decidable statements about weighted composition operators with
//! linear-fractional symbols.

mod classify;
mod normal_form;
mod spectral;
mod verdict;
mod witness;

pub use classify::{
    classify_unweighted, classify_weighted, default_kernel_grid, kernel_inequality_check, kernel_ratio,
    ClassifyOptions, FORM_MATCH_TOL, VIOLATION_MARGIN, WEIGHT_ZERO_TOL,
};
pub use normal_form::{
    comparison_points, conjugate_to_origin, fixed_point_weight, normal_form, normal_form_map, weights_agree,
    NormalFormSymbols, FIXED_POINT_TOL,
};
pub use spectral::{
    clark_singular_part, eigenvalue_bound, essential_spectral_radius_closed, hausdorff_distance, norm_bounds,
    norm_bounds_at, norm_lower_bound_grid, spectral_radius_closed, spectral_report, ClarkSingularPart, Formula,
    NormBounds, SpectralReport,
};
pub use verdict::{Citation, HyponormalityVerdict, KernelInequalityViolation, Outcome, Witness};
pub use witness::{certifies, witness_grid, witness_search, WitnessBudget, WITNESS_FLOOR};
