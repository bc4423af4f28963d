//! Tunable constants and default tolerances.
//!
//! Every threshold used by the library lives here so that the numbers the
//! tests and the command line tool rely on can be audited in one place.

/// Result length at which polynomial multiplication switches from the
/// schoolbook product to zero-padded FFT convolution.
pub const FFT_MUL_THRESHOLD: usize = 64;

/// Default absolute tolerance of [`crate::nlft::pair_check`].
pub const PAIR_CHECK_TOL: f64 = 1e-8;

/// Grid refinement factor for sup-norm estimates on the unit circle.
pub const ETA_GRID_FACTOR: usize = 16;

/// Roots with `||alpha| - 1| <= ROOT_SNAP_TOL` are treated as lying on the circle.
pub const ROOT_SNAP_TOL: f64 = 1e-7;

/// Roots `alpha`, `beta` are reflection partners when `|alpha conj(beta) - 1|` is below this.
pub const ROOT_PAIR_TOL: f64 = 1e-6;

/// Distance under which two computed roots are considered the same root.
pub const ROOT_CLUSTER_TOL: f64 = 1e-6;

/// Default margin of [`crate::complement::is_outer_poly`].
pub const OUTER_MARGIN: f64 = 1e-9;

/// Degree above which outerness is certified by the argument principle
/// instead of computing every root.
pub const OUTER_ROOT_DEGREE_CAP: usize = 256;

/// Largest degree of `b` accepted by [`crate::complement::enumerate_complements`].
pub const ENUMERATE_DEGREE_CAP: usize = 12;

/// Largest imaginary part tolerated before a sequence is declared non-real.
pub const REAL_GAMMA_TOL: f64 = 1e-9;

/// Slack allowed when checking `1 - |b|^2 >= 0` or `|f| <= 1` on a grid.
pub const ADMISSIBILITY_SLACK: f64 = 1e-12;

/// Largest size for which the dense diagnostics build matrices.
pub const DENSE_CAP: usize = 2048;

/// Optional leaf size at which the inverse nonlinear FFT hands off to layer
/// stripping. Disabled by default; any value gives the same output.
pub const INLFFT_LEAF_SIZE: usize = 32;

/// Number of points of the verification grids used by the QSP/GQSP solvers.
pub const PHASE_CHECK_GRID: usize = 1024;
