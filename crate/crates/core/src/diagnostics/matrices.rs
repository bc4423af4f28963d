//! Dense matrices behind layer stripping: `K = T(a)T(a)* + T(b)T(b)*` and its
//! factorization `K = L D L*` read off the stripping iterates.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::complement::{is_outer_poly, OuterClass};
use crate::config::{DENSE_CAP, OUTER_MARGIN};
use crate::error::{NlftError, Result};
use crate::inverse::StripState;
use crate::nlft::{eta_of, NlftPair};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub type CMatrix = DMatrix<C64>;

fn check_size(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        return Err(NlftError::InvalidInput(format!("dense diagnostics are capped at n = {DENSE_CAP}, got {n}")));
    }
    Ok(())
}

/// Lower-triangular Toeplitz matrix with first column `v`.
pub fn toeplitz_lower(v: &[C64]) -> CMatrix {
    let n = v.len();
    CMatrix::from_fn(n, n, |i, j| if i >= j { v[i - j] } else { ZERO })
}

pub fn build_k(a_star: &[C64], b: &[C64]) -> Result<CMatrix> {
    if a_star.len() != b.len() {
        return Err(NlftError::InvalidInput("a* and b windows differ in length".into()));
    }
    check_size(a_star.len())?;
    let ta = toeplitz_lower(a_star);
    let tb = toeplitz_lower(b);
    Ok(&ta * ta.adjoint() + &tb * tb.adjoint())
}

/// Largest entry of `K - Z K Z* - a a* - b b*`.
pub fn displacement_residual(k: &CMatrix, a_star: &[C64], b: &[C64]) -> f64 {
    let n = k.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let shifted = if i > 0 && j > 0 { k[(i - 1, j - 1)] } else { ZERO };
            let r = k[(i, j)] - shifted - a_star[i] * a_star[j].conj() - b[i] * b[j].conj();
            worst = worst.max(r.norm());
        }
    }
    worst
}

/// `L`, `D` (as a vector), `U = L sqrt(D)`, `H = sqrt(D)` and `K`.
#[derive(Clone, Debug)]
pub struct StripMatrices {
    pub l: CMatrix,
    pub d: Vec<f64>,
    pub u: CMatrix,
    pub h: Vec<f64>,
    pub k: CMatrix,
    pub gamma: Vec<C64>,
    pub a_star: Vec<C64>,
    pub b: Vec<C64>,
}

impl StripMatrices {
    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// `||K - L D L*||_F / ||K||_F`.
    pub fn ldl_residual(&self) -> f64 {
        let dm = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.n(),
            self.d.iter().map(|&x| C64::new(x, 0.0)),
        ));
        let r = &self.k - &self.l * dm * self.l.adjoint();
        r.norm() / self.k.norm()
    }

    pub fn displacement_residual(&self) -> f64 {
        displacement_residual(&self.k, &self.a_star, &self.b)
    }
}

/// Run layer stripping on the pair and assemble the factor matrices.
pub fn build_strip_matrices(p: &NlftPair) -> Result<StripMatrices> {
    let (a_star, b) = p.strip_vectors();
    let n = a_star.len();
    check_size(n)?;
    let mut state = StripState::new(&a_star, &b)?;
    let mut l = CMatrix::zeros(n, n);
    let mut d = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    for k in 0..n {
        let step = state.advance()?;
        gamma.push(step.gamma);
        let col = state.a_vec();
        for (j, v) in col.iter().chain(std::iter::once(&step.dropped)).enumerate() {
            l[(k + j, k)] = v / step.pivot;
        }
        d.push(step.pivot * step.pivot);
    }
    let h: Vec<f64> = d.iter().map(|x| x.sqrt()).collect();
    let mut u = l.clone();
    for (j, hj) in h.iter().enumerate() {
        u.column_mut(j).scale_mut(*hj);
    }
    let k = build_k(&a_star, &b)?;
    Ok(StripMatrices { l, d, u, h, k, gamma, a_star, b })
}

#[derive(Clone, Debug, Serialize)]
pub struct LSystemReport {
    pub n: usize,
    /// `||L gamma - b / a_{0,0}||_inf`.
    pub residual: f64,
}

/// Substitute the stripping sequence into `L gamma = b / a_{0,0}`.
pub fn verify_l_system(p: &NlftPair) -> Result<LSystemReport> {
    let sm = build_strip_matrices(p)?;
    Ok(l_system_residual(&sm))
}

pub fn l_system_residual(sm: &StripMatrices) -> LSystemReport {
    let n = sm.n();
    let g = nalgebra::DVector::from_column_slice(&sm.gamma);
    let lg = &sm.l * g;
    let a00 = sm.a_star.first().map_or(1.0, |x| x.re);
    let residual = (0..n).map(|i| (lg[i] - sm.b[i] / a00).norm()).fold(0.0, f64::max);
    LSystemReport { n, residual }
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn hermitian_extremes(m: &CMatrix) -> (f64, f64) {
    if m.nrows() == 0 {
        return (f64::NAN, f64::NAN);
    }
    let ev = m.clone().symmetric_eigenvalues();
    let lo = ev.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Largest and smallest singular value via the eigenvalues of `A* A`.
pub fn singular_extremes(a: &CMatrix) -> (f64, f64) {
    let (lo, hi) = hermitian_extremes(&(a.adjoint() * a));
    (hi.max(0.0).sqrt(), lo.max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormBoundsReport {
    pub n: usize,
    pub eta: f64,
    pub window: (usize, usize),
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
}

/// Slack applied to every inequality of [`norm_bounds_report`].
pub const NORM_BOUND_SLACK: f64 = 1e-8;

/// Spectral bounds on `K`, `L`, `L^{-1}` and `(D L*)^{-1}`.
///
/// Requires `a*` to have no zeros in the closed disk; `eta` defaults to
/// [`eta_of`].
pub fn norm_bounds_report(p: &NlftPair, eta: Option<f64>) -> Result<NormBoundsReport> {
    if is_outer_poly(&p.a.star(), OUTER_MARGIN)? != OuterClass::OuterClosedDisk {
        return Err(NlftError::Precondition("a* is not certified free of zeros in the closed disk".into()));
    }
    let eta = eta.unwrap_or_else(|| eta_of(p, None));
    let sm = build_strip_matrices(p)?;
    let n = sm.n();
    Ok(norm_bounds_window(&sm, 0, n, eta))
}

/// The same bounds on the principal submatrices indexed by `lo..hi`.
pub fn norm_bounds_window(sm: &StripMatrices, lo: usize, hi: usize, eta: f64) -> NormBoundsReport {
    let w = hi - lo;
    let k = sm.k.view((lo, lo), (w, w)).into_owned();
    let l = sm.l.view((lo, lo), (w, w)).into_owned();
    let mut dl = l.adjoint();
    for (i, mut row) in dl.row_iter_mut().enumerate() {
        row.scale_mut(sm.d[lo + i]);
    }
    let (kmin, kmax) = hermitian_extremes(&k);
    let (lmax, lmin) = singular_extremes(&l);
    let (_, dlmin) = singular_extremes(&dl);
    let s = NORM_BOUND_SLACK;
    let r = 1.0 / eta.sqrt();
    let mk = |name, lower: f64, value: f64, upper: f64| BoundCheck {
        name,
        lower,
        value,
        upper,
        pass: value >= lower - s && value <= upper + s,
    };
    let checks = vec![
        mk("lambda_min(K)", eta * (2.0 - eta), kmin, kmax),
        mk("lambda_max(K)", kmin, kmax, 2.0 - eta),
        mk("||L||", 1.0, lmax, r),
        mk("||L^-1||", 1.0, 1.0 / lmin, r),
        mk("||(DL*)^-1||", 0.0, 1.0 / dlmin, 1.0 / (eta * (2.0 - eta))),
    ];
    let pass = checks.iter().all(|c| c.pass);
    NormBoundsReport { n: sm.n(), eta, window: (lo, hi), checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn k_examples() {
        let k = build_k(&[c(1.0)], &[c(0.0)]).unwrap();
        assert_eq!(k[(0, 0)], c(1.0));
        let a = [c(0.5), c(-0.5)];
        let b = [c(0.5), c(0.5)];
        let k = build_k(&a, &b).unwrap();
        // Hand product of the 2x2 Toeplitz factors.
        let want = [[0.5, 0.0], [0.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((k[(i, j)] - c(want[i][j])).norm() < 1e-15);
            }
        }
        assert!(displacement_residual(&k, &a, &b) < 1e-15);
    }

    #[test]
    fn strip_matrices_two_step() {
        let p = NlftPair::new(LaurentPoly::from_real(-1, &[-0.5, 0.5]), LaurentPoly::from_real(0, &[0.5, 0.5]));
        let sm = build_strip_matrices(&p).unwrap();
        // After one step with gamma = 1: a column = (1/sqrt2)(0.5 + 0.5, -0.5 + 0.5) = (1/sqrt2, 0).
        assert!((sm.l[(1, 0)]).norm() < 1e-15);
        assert!((sm.l[(0, 0)] - c(1.0)).norm() < 1e-15);
        assert!((sm.d[0] - 0.5).abs() < 1e-15);
        assert!(sm.ldl_residual() < 1e-15);
        assert!(l_system_residual(&sm).residual < 1e-12);
    }

    #[test]
    fn trivial_pair() {
        let sm = build_strip_matrices(&NlftPair::identity()).unwrap();
        assert_eq!(sm.n(), 1);
        assert_eq!(sm.d, vec![1.0]);
        assert_eq!(l_system_residual(&sm).residual, 0.0);
    }

    #[test]
    fn constant_pair_bounds() {
        let p = NlftPair::new(LaurentPoly::from_real(0, &[0.75f64.sqrt()]), LaurentPoly::from_real(0, &[0.5]));
        let r = norm_bounds_report(&p, None).unwrap();
        assert!((r.eta - 0.5).abs() < 1e-15);
        assert!(r.pass, "{r:?}");
    }
}
