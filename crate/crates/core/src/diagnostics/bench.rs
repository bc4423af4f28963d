//! Timing harness comparing layer stripping with the inverse nonlinear FFT.

use std::time::Instant;

use serde::Serialize;

use crate::diagnostics::experiment::fit_slope;
use crate::error::{NlftError, Result};
use crate::inverse::{inlfft, layer_strip_general};
use crate::sampling::{admissible_pair, rng};

/// Target `eta` of the benchmark inputs.
pub const BENCH_ETA: f64 = 0.25;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub t_layer: f64,
    pub t_fast: f64,
    /// Sup difference between the two outputs.
    pub max_diff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub slope_layer: f64,
    pub slope_fast: f64,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,t_layer,t_fast,max_diff\n");
        for r in &self.rows {
            s.push_str(&format!("{},{:e},{:e},{:e}\n", r.n, r.t_layer, r.t_fast, r.max_diff));
        }
        s.push_str(&format!("# slope_layer={:.4} slope_fast={:.4}\n", self.slope_layer, self.slope_fast));
        s
    }
}

/// Median wall time in seconds of `reps` runs of `f`.
pub fn time_median<T>(reps: usize, mut f: impl FnMut() -> T) -> f64 {
    let mut ts: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed().as_secs_f64()
        })
        .collect();
    ts.sort_by(|a, b| a.total_cmp(b));
    ts[ts.len() / 2]
}

/// Slope of `log t` against `log n`.
pub fn log_log_slope(ns: &[usize], ts: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|t| t.max(1e-12).ln()).collect();
    fit_slope(&xs, &ys)
}

/// Times both inverses at every power of two in `min_n..=max_n` on the same
/// random admissible input.
pub fn bench(min_n: usize, max_n: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if !min_n.is_power_of_two() || !max_n.is_power_of_two() || min_n > max_n {
        return Err(NlftError::InvalidInput("bench needs powers of two with min <= max".into()));
    }
    let mut r = rng(seed);
    let mut rows = Vec::new();
    let mut n = min_n;
    while n <= max_n {
        let adm = admissible_pair(n, BENCH_ETA, false, &mut r)?;
        let (a, b) = adm.pair.strip_vectors();
        let g_layer = layer_strip_general(&a, &b, n)?;
        let (g_fast, _) = inlfft(&a, &b)?;
        let max_diff = g_layer.sup_diff(&g_fast);
        let t_layer = time_median(reps, || layer_strip_general(&a, &b, n));
        let t_fast = time_median(reps, || inlfft(&a, &b));
        rows.push(BenchRow { n, t_layer, t_fast, max_diff });
        n *= 2;
    }
    let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    let tl: Vec<f64> = rows.iter().map(|r| r.t_layer).collect();
    let tf: Vec<f64> = rows.iter().map(|r| r.t_fast).collect();
    let (slope_layer, slope_fast) =
        if rows.len() >= 2 { (log_log_slope(&ns, &tl), log_log_slope(&ns, &tf)) } else { (f64::NAN, f64::NAN) };
    Ok(BenchReport { rows, slope_layer, slope_fast })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let ns = [8, 16, 32];
        let ts: Vec<f64> = ns.iter().map(|&n| 1e-6 * (n as f64).powi(2)).collect();
        assert!((log_log_slope(&ns, &ts) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_bench() {
        let r = bench(8, 16, 1, 1).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows.iter().all(|x| x.max_diff < 1e-10));
        assert!(bench(6, 16, 1, 1).is_err());
    }
}
