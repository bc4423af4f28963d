//! Residuals on the circle and the outer versus non-outer stripping experiment.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::complement::{complete_b_outer, flip_to_antiouter};
use crate::diagnostics::reference::{flip_a_star_dd, outer_a_star_dd, strip_dd, Dd};
use crate::error::{NlftError, Result};
use crate::inverse::layer_strip_general;
use crate::nlft::{forward_nlft_fast, ComplexSequence, NlftPair};
use crate::sampling::{random_b_real, rng};

/// `max_j || M_p(z_j) - M_g(z_j) ||_2` over `grid` points, where `M` is the
/// SU(2) transfer matrix. Both matrices have the form `[[a, b], [-b*, a*]]`,
/// so the 2-norm of the difference is `sqrt(|da|^2 + |db|^2)`.
pub fn residual_on_circle(p: &NlftPair, g: &ComplexSequence, grid: usize) -> f64 {
    let q = forward_nlft_fast(g);
    let (a1, b1) = p.eval_circle(grid);
    let (a2, b2) = q.eval_circle(grid);
    (0..grid)
        .map(|j| ((a1[j] - a2[j]).norm_sqr() + (b1[j] - b2[j]).norm_sqr()).sqrt())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct InstabilityRow {
    pub n: usize,
    pub seed: u64,
    pub residual_outer: f64,
    pub residual_flipped: f64,
    /// `|gamma_k - gamma_k^true|`, the truth being layer stripping of the same
    /// pair built and stripped in double-double.
    pub entry_error_outer: Vec<f64>,
    pub entry_error_flipped: Vec<f64>,
}

impl InstabilityRow {
    pub fn csv_header() -> &'static str {
        "n,residual_outer,residual_flipped"
    }

    pub fn csv_line(&self) -> String {
        format!("{},{:e},{:e}", self.n, self.residual_outer, self.residual_flipped)
    }
}

fn strip_with_errors(p: &NlftPair, truth: &[C64]) -> Result<(f64, Vec<f64>)> {
    let (a, b) = p.strip_vectors();
    let n = a.len();
    match layer_strip_general(&a, &b, n) {
        Ok(g) => {
            let errs = g.values().iter().zip(truth).map(|(x, y)| (x - y).norm()).collect();
            Ok((residual_on_circle(p, &g, 4 * n.max(4)), errs))
        }
        // A collapsed pivot is the extreme form of the instability.
        Err(NlftError::NonPositivePivot { .. }) => Ok((f64::INFINITY, vec![f64::INFINITY; n])),
        Err(e) => Err(e),
    }
}

/// Random real `b` of degree `n - 1` with grid maximum 1/2, completed to
/// the outer pair and flipped to the pair with every root of `a*` inside the
/// disk; both are layer-stripped in double precision.
pub fn instability_experiment(n: usize, seed: u64) -> Result<InstabilityRow> {
    if n < 4 {
        return Err(NlftError::InvalidInput("the experiment needs n >= 4".into()));
    }
    let mut r = rng(seed);
    let b = random_b_real(n, 0.5, &mut r);
    let outer = complete_b_outer(&b)?;
    let flipped = flip_to_antiouter(&outer)?;
    let b_dd: Vec<Dd> = b.coeffs().iter().map(|&z| Dd::from_c64(z)).collect();
    let outer_dd = outer_a_star_dd(b.coeffs())?;
    let truth_outer = strip_dd(&outer_dd, &b_dd)?;
    let truth_flipped = strip_dd(&flip_a_star_dd(&outer_dd), &b_dd)?;
    let (residual_outer, entry_error_outer) = strip_with_errors(&outer, &truth_outer)?;
    let (residual_flipped, entry_error_flipped) = strip_with_errors(&flipped, &truth_flipped)?;
    Ok(InstabilityRow { n, seed, residual_outer, residual_flipped, entry_error_outer, entry_error_flipped })
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Errors below this are indistinguishable from exact agreement.
pub const ERROR_FLOOR: f64 = 1e-20;

/// Slope of `log10(err_k)` against `k`, with errors clamped to `[ERROR_FLOOR, 1e300]`.
pub fn log_linear_slope(errors: &[f64]) -> f64 {
    let xs: Vec<f64> = (0..errors.len()).map(|k| k as f64).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.clamp(ERROR_FLOOR, 1e300).log10()).collect();
    fit_slope(&xs, &ys)
}
