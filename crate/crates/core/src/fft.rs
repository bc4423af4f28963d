//! FFT helpers shared by the polynomial code: cached plans, convolution and
//! evaluation on roots-of-unity grids.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::config::FFT_MUL_THRESHOLD;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan_forward(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn plan_inverse(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// In-place DFT with kernel `e^{-2 pi i jk/n}`.
pub fn fft_forward(buf: &mut [C64]) {
    if buf.len() > 1 {
        plan_forward(buf.len()).process(buf);
    }
}

/// In-place unnormalized DFT with kernel `e^{+2 pi i jk/n}`.
pub fn fft_inverse(buf: &mut [C64]) {
    if buf.len() > 1 {
        plan_inverse(buf.len()).process(buf);
    }
}

/// Schoolbook product of two coefficient vectors.
pub fn convolve_direct(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product of two coefficient vectors; FFT based once the result is long enough.
pub fn convolve(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = a.len() + b.len() - 1;
    if len < FFT_MUL_THRESHOLD || a.len().min(b.len()) < 8 {
        return convolve_direct(a, b);
    }
    let size = len.next_power_of_two();
    let mut fa = vec![C64::new(0.0, 0.0); size];
    let mut fb = vec![C64::new(0.0, 0.0); size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft_inverse(&mut fa);
    let scale = 1.0 / size as f64;
    fa.truncate(len);
    for x in fa.iter_mut() {
        *x *= scale;
    }
    fa
}

/// Values of `sum_k c_k z^{low + k}` at `z = e^{2 pi i j/m}`, `j = 0..m`.
pub fn eval_on_circle(low: i64, coeffs: &[C64], m: usize) -> Vec<C64> {
    assert!(m > 0, "grid size must be positive");
    let mut buf = vec![C64::new(0.0, 0.0); m];
    let mm = m as i64;
    for (k, &c) in coeffs.iter().enumerate() {
        let idx = (low + k as i64).rem_euclid(mm) as usize;
        buf[idx] += c;
    }
    fft_inverse(&mut buf);
    buf
}

/// Coefficients `c_0..c_{m-1}` of a polynomial from its values at the `m`-th
/// roots of unity (inverse of [`eval_on_circle`] with `low = 0`).
pub fn coeffs_from_circle(values: &[C64]) -> Vec<C64> {
    let m = values.len();
    let mut buf = values.to_vec();
    fft_forward(&mut buf);
    let scale = 1.0 / m as f64;
    for x in buf.iter_mut() {
        *x *= scale;
    }
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_convolution_matches_schoolbook() {
        let a: Vec<C64> = (0..100).map(|k| C64::new(k as f64 * 0.01, -(k as f64).sin())).collect();
        let b: Vec<C64> = (0..77).map(|k| C64::new((k as f64).cos(), 0.3)).collect();
        let x = convolve(&a, &b);
        let y = convolve_direct(&a, &b);
        assert_eq!(x.len(), y.len());
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).norm() < 1e-11);
        }
    }

    #[test]
    fn circle_roundtrip() {
        let c: Vec<C64> = (0..10).map(|k| C64::new(k as f64, 1.0 - k as f64)).collect();
        let v = eval_on_circle(0, &c, 16);
        let back = coeffs_from_circle(&v);
        for k in 0..16 {
            let want = if k < 10 { c[k] } else { C64::new(0.0, 0.0) };
            assert!((back[k] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn negative_powers_wrap() {
        // z^{-1} at z = e^{2 pi i j/4}
        let v = eval_on_circle(-1, &[C64::new(1.0, 0.0)], 4);
        for (j, x) in v.iter().enumerate() {
            let th = -2.0 * std::f64::consts::PI * j as f64 / 4.0;
            assert!((x - C64::from_polar(1.0, th)).norm() < 1e-15);
        }
    }
}
