//! Verification tools: structured matrices, the instability experiment and
//! Lipschitz estimates. These are dense and meant for moderate sizes.

pub mod bench;
pub mod experiment;
pub mod lipschitz;
pub mod matrices;
pub mod reference;

pub use bench::{bench, log_log_slope, time_median, BenchReport, BenchRow};
pub use experiment::{fit_slope, instability_experiment, log_linear_slope, residual_on_circle, InstabilityRow};
pub use lipschitz::{
    lipschitz_checks, local_lipschitz_check, nonuniform_witness, theta_map_bounds, witness_pair, LipschitzReport,
    ThetaReport, WitnessReport,
};
pub use matrices::{
    build_k, build_strip_matrices, displacement_residual, l_system_residual, norm_bounds_report, norm_bounds_window, verify_l_system,
    LSystemReport, NormBoundsReport, StripMatrices,
};
pub use reference::{outer_a_star_dd, reference_layer_strip};
