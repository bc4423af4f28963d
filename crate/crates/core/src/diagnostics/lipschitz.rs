//! Lipschitz-type estimates for the transform and for the map `gamma -> Theta(gamma)`.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{NlftError, Result};
use crate::inverse::{layer_strip, GivensRotor};
use crate::laurent::LaurentPoly;
use crate::nlft::{forward_nlft_fast, ComplexSequence, NlftPair};

/// `l^p` norm; `p = f64::INFINITY` gives the max norm.
pub fn lp_norm(v: &[C64], p: f64) -> f64 {
    if p.is_infinite() {
        v.iter().map(|x| x.norm()).fold(0.0, f64::max)
    } else if p == 1.0 {
        v.iter().map(|x| x.norm()).sum()
    } else {
        v.iter().map(|x| x.norm().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// `n^{-1/p}`, which is 1 for `p = infinity`.
fn weight(n: usize, p: f64) -> f64 {
    (n as f64).powf(-1.0 / p)
}

#[derive(Clone, Debug, Serialize)]
pub struct LipschitzReport {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Coefficient vectors `(a_0..a_{n-1})` of `a = sum a_k z^{-k}` and
/// `(b_m..b_{m+n-1})` of `b`, for a sequence supported on `m..m+n`.
fn pair_vectors(p: &NlftPair, offset: i64, n: usize) -> (Vec<C64>, Vec<C64>) {
    let a = (0..n as i64).map(|k| p.a.coeff(-k)).collect();
    let b = (0..n as i64).map(|k| p.b.coeff(offset + k)).collect();
    (a, b)
}

/// Both sides of
/// `n^{-1/p} ||da||_p + n^{-1/q} ||db||_q <= 6 n^{1/2 - 1/r} ||dgamma||_r`.
pub fn lipschitz_checks(g1: &ComplexSequence, g2: &ComplexSequence, (p, q, r): (f64, f64, f64)) -> Result<LipschitzReport> {
    if g1.len() != g2.len() || g1.support_offset() != g2.support_offset() {
        return Err(NlftError::InvalidInput("sequences must share their support".into()));
    }
    let n = g1.len();
    if n == 0 {
        return Ok(LipschitzReport { n, p, q, r, lhs: 0.0, rhs: 0.0, holds: true });
    }
    let m = g1.support_offset();
    let (a1, b1) = pair_vectors(&forward_nlft_fast(g1), m, n);
    let (a2, b2) = pair_vectors(&forward_nlft_fast(g2), m, n);
    let diff = |x: &[C64], y: &[C64]| x.iter().zip(y).map(|(u, v)| u - v).collect::<Vec<_>>();
    let da = diff(&a1, &a2);
    let db = diff(&b1, &b2);
    let dg = diff(g1.values(), g2.values());
    let lhs = weight(n, p) * lp_norm(&da, p) + weight(n, q) * lp_norm(&db, q);
    let rhs = 6.0 * (n as f64).sqrt() * weight(n, r) * lp_norm(&dg, r);
    Ok(LipschitzReport { n, p, q, r, lhs, rhs, holds: lhs <= rhs })
}

/// Largest singular value of a 2x2 complex matrix.
pub fn spectral_norm_2x2(m: &[[C64; 2]; 2]) -> f64 {
    let fro: f64 = m.iter().flatten().map(|x| x.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    ((fro + (fro * fro - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt()
}

/// Maximum absolute column sum.
pub fn one_norm_2x2(m: &[[C64; 2]; 2]) -> f64 {
    (0..2).map(|j| m[0][j].norm() + m[1][j].norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub norm2: f64,
    pub bound2: f64,
    pub norm1: f64,
    pub bound1: f64,
    pub holds: bool,
}

/// `||Theta(g1) - Theta(g2)||_2 <= sqrt(10)|g1 - g2|` and the strict 1-norm
/// bound `< 3|g1 - g2|` (equality allowed only when `g1 = g2`).
pub fn theta_map_bounds(g1: C64, g2: C64) -> ThetaReport {
    let (t1, t2) = (GivensRotor::new(g1).matrix(), GivensRotor::new(g2).matrix());
    let d = [[t1[0][0] - t2[0][0], t1[0][1] - t2[0][1]], [t1[1][0] - t2[1][0], t1[1][1] - t2[1][1]]];
    let delta = (g1 - g2).norm();
    let norm2 = spectral_norm_2x2(&d);
    let norm1 = one_norm_2x2(&d);
    let bound2 = 10f64.sqrt() * delta;
    let bound1 = 3.0 * delta;
    let strict = if delta > 0.0 { norm1 < bound1 } else { norm1 == 0.0 };
    ThetaReport { norm2, bound2, norm1, bound1, holds: norm2 <= bound2 && strict }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalLipschitzReport {
    pub n: usize,
    pub eps: f64,
    pub delta: f64,
    pub gamma_diff_l1: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `||dgamma||_1 < eps (3n)^n (1 + 1/delta)^{2n}` with `eps` the largest
/// coefficient change and `delta = min(a_0, a'_0)`. Meaningful for small `n` only.
pub fn local_lipschitz_check(p1: &NlftPair, p2: &NlftPair) -> Result<LocalLipschitzReport> {
    let g1 = layer_strip(p1)?;
    let g2 = layer_strip(p2)?;
    if g1.len() != g2.len() {
        return Err(NlftError::InvalidInput("pairs have different lengths".into()));
    }
    let n = g1.len();
    let eps = p1.a.max_diff(&p2.a).max(p1.b.max_diff(&p2.b));
    let delta = p1.a_star_zero().re.min(p2.a_star_zero().re);
    let gamma_diff_l1: f64 = g1.values().iter().zip(g2.values()).map(|(x, y)| (x - y).norm()).sum();
    let bound = eps * (3.0 * n as f64).powi(n as i32) * (1.0 + 1.0 / delta).powi(2 * n as i32);
    let holds = if eps > 0.0 { gamma_diff_l1 < bound } else { gamma_diff_l1 == 0.0 };
    Ok(LocalLipschitzReport { n, eps, delta, gamma_diff_l1, bound, holds })
}

/// `a = 1/k + s z^{-(n-1)}`, `b = s - (1/k) z^{n-1}` with `s = sqrt(1/2 - 1/k^2)`.
pub fn witness_pair(k: usize, n: usize) -> Result<NlftPair> {
    if k < 2 || n < 2 {
        return Err(NlftError::InvalidInput("the witness needs k >= 2 and n >= 2".into()));
    }
    let kf = k as f64;
    let s = (0.5 - 1.0 / (kf * kf)).sqrt();
    let mut a = vec![0.0; n];
    a[0] = s;
    a[n - 1] = 1.0 / kf;
    let mut b = vec![0.0; n];
    b[0] = s;
    b[n - 1] = -1.0 / kf;
    Ok(NlftPair::new(LaurentPoly::from_real(-(n as i64 - 1), &a), LaurentPoly::from_real(0, &b)))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub gamma_gap: f64,
    pub pair_distance_sq: f64,
    pub distance_bound: f64,
    pub holds: bool,
}

/// Compare the witness pairs at `k` and `k + 1`: the sequences stay
/// `1/sqrt(2)` apart while the pairs converge like `k^{-2}`.
pub fn nonuniform_witness(k: usize, n: usize) -> Result<WitnessReport> {
    let p1 = witness_pair(k, n)?;
    let p2 = witness_pair(k + 1, n)?;
    let g1 = layer_strip(&p1)?;
    let g2 = layer_strip(&p2)?;
    let gamma_gap = g1.values().iter().zip(g2.values()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let pair_distance_sq = p1.a.sub(&p2.a).norm_sqr() + p1.b.sub(&p2.b).norm_sqr();
    let distance_bound = 10.0 / (k as f64).powi(4);
    let holds = gamma_gap >= std::f64::consts::FRAC_1_SQRT_2 && pair_distance_sq <= distance_bound;
    Ok(WitnessReport { k, gamma_gap, pair_distance_sq, distance_bound, holds })
}
