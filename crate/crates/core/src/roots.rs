//! Polynomial roots and zero counting.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{NlftError, Result};
use crate::fft::eval_on_circle;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Horner evaluation of `sum_j c_j z^j`.
pub fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(ZERO, |acc, &x| acc * z + x)
}

fn horner_with_derivative(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
    }
    (p, dp)
}

/// Roots of `sum_j c_j z^j` as companion-matrix eigenvalues, each polished by
/// a few guarded Newton steps. Trailing zero coefficients at the top are
/// ignored; zero coefficients at the bottom become roots at the origin.
pub fn poly_roots(c: &[C64]) -> Result<Vec<C64>> {
    let Some(hi) = c.iter().rposition(|x| *x != ZERO) else {
        return Err(NlftError::InvalidInput("the zero polynomial has no finite root set".into()));
    };
    let lo = c.iter().position(|x| *x != ZERO).unwrap();
    let mut roots = vec![ZERO; lo];
    let core = &c[lo..=hi];
    let d = core.len() - 1;
    if d == 0 {
        return Ok(roots);
    }
    if d == 1 {
        roots.push(-core[0] / core[1]);
        return Ok(roots);
    }
    let lead = core[d];
    if core.iter().all(|x| x.im == 0.0) {
        let mut m = DMatrix::<f64>::zeros(d, d);
        for j in 0..d {
            m[(0, j)] = -core[d - 1 - j].re / lead.re;
        }
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        let schur = m
            .try_schur(f64::EPSILON, 0)
            .ok_or_else(|| NlftError::RootPairing("eigenvalue iteration did not converge".into()))?;
        for z0 in schur.complex_eigenvalues().iter() {
            roots.push(polish(core, *z0));
        }
        return Ok(roots);
    }
    let mut m = DMatrix::<C64>::zeros(d, d);
    for j in 0..d {
        m[(0, j)] = -core[d - 1 - j] / lead;
    }
    for i in 1..d {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    let schur = m
        .try_schur(f64::EPSILON, 0)
        .ok_or_else(|| NlftError::RootPairing("eigenvalue iteration did not converge".into()))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| NlftError::RootPairing("eigenvalues unavailable".into()))?;
    for &z0 in eig.iter() {
        roots.push(polish(core, z0));
    }
    Ok(roots)
}

fn polish(c: &[C64], mut z: C64) -> C64 {
    let (mut p, _) = horner_with_derivative(c, z);
    for _ in 0..3 {
        let (_, dp) = horner_with_derivative(c, z);
        if dp == ZERO {
            break;
        }
        let cand = z - p / dp;
        let (pc, _) = horner_with_derivative(c, cand);
        if !(pc.norm() < p.norm()) {
            break;
        }
        z = cand;
        p = pc;
    }
    z
}

/// Number of zeros of `sum_j c_j z^j` in `|z| < r`, certified by the
/// argument principle on a sampled circle. `None` when no grid up to the cap
/// is fine enough to exclude zeros near the circle.
pub fn zeros_inside(c: &[C64], r: f64) -> Option<usize> {
    let hi = c.iter().rposition(|x| *x != ZERO)?;
    let d = hi;
    if d == 0 {
        return Some(0);
    }
    let scaled: Vec<C64> = c[..=hi].iter().enumerate().map(|(j, x)| x * r.powi(j as i32)).collect();
    let mut m = (8 * (d + 1)).next_power_of_two().max(64);
    while m <= 1 << 24 {
        let vals = eval_on_circle(0, &scaled, m);
        let h = 2.0 * std::f64::consts::PI / m as f64;
        let sup_samples = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let min_samples = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        // Bernstein: |p'| <= d max|p|; and max|p| <= S / (1 - h d / 2) from
        // the nearest-sample bound.
        let hd = h * d as f64;
        if hd < 1.0 {
            let sup = sup_samples / (1.0 - hd / 2.0);
            if hd * sup < min_samples {
                let mut wind = 0.0;
                for j in 0..m {
                    let q = vals[(j + 1) % m] / vals[j];
                    wind += q.arg();
                }
                let count = (wind / (2.0 * std::f64::consts::PI)).round();
                return Some(count.max(0.0) as usize);
            }
        }
        m *= 2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn from_roots(r: &[C64]) -> Vec<C64> {
        let mut p = vec![c(1.0, 0.0)];
        for &a in r {
            let mut q = vec![ZERO; p.len() + 1];
            for (j, &x) in p.iter().enumerate() {
                q[j + 1] += x;
                q[j] -= x * a;
            }
            p = q;
        }
        p
    }

    #[test]
    fn recovers_known_roots() {
        let want = [c(2.0, 0.0), c(0.5, 0.5), c(-1.0, 0.3), c(0.0, -3.0)];
        let got = poly_roots(&from_roots(&want)).unwrap();
        assert_eq!(got.len(), 4);
        for w in want {
            let best = got.iter().map(|g| (g - w).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "{w} missing, best {best}");
        }
    }

    #[test]
    fn zeros_at_origin_and_degenerate() {
        let got = poly_roots(&[ZERO, ZERO, c(-2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(got.iter().filter(|z| **z == ZERO).count(), 2);
        assert!(got.iter().any(|z| (z - c(2.0, 0.0)).norm() < 1e-15));
        assert!(poly_roots(&[c(3.0, 0.0)]).unwrap().is_empty());
        assert!(poly_roots(&[ZERO]).is_err());
    }

    #[test]
    fn winding_counts() {
        let p = from_roots(&[c(0.5, 0.0), c(0.0, 0.9), c(2.0, 0.0), c(-1.5, 1.5)]);
        assert_eq!(zeros_inside(&p, 1.0), Some(2));
        assert_eq!(zeros_inside(&p, 0.7), Some(1));
        assert_eq!(zeros_inside(&p, 10.0), Some(4));
        assert_eq!(zeros_inside(&[c(1.0, 0.0)], 1.0), Some(0));
    }
}
