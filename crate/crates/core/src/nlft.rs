//! Coefficient sequences, SU(2) pairs and the forward transform.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::config::{ETA_GRID_FACTOR, PAIR_CHECK_TOL};
use crate::error::{NlftError, Result};
use crate::fft::convolve;
use crate::laurent::{complex_to_split, split_to_complex, LaurentPoly};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// A finitely supported sequence `gamma_{offset}, ..., gamma_{offset+len-1}`.
///
/// A strict sequence has nonzero first and last entries. The relaxed form
/// (the default) allows zero endpoints, which is what the generalized layer
/// stripping iteration produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson", into = "SequenceJson")]
pub struct ComplexSequence {
    values: Vec<C64>,
    support_offset: i64,
    strict: bool,
}

impl ComplexSequence {
    pub fn new(support_offset: i64, values: Vec<C64>) -> Self {
        ComplexSequence { values, support_offset, strict: false }
    }

    /// Fails unless both endpoints are nonzero (or the sequence is empty).
    pub fn strict(support_offset: i64, values: Vec<C64>) -> Result<Self> {
        if let (Some(first), Some(last)) = (values.first(), values.last()) {
            if *first == ZERO || *last == ZERO {
                return Err(NlftError::InvalidInput(
                    "strict sequence needs nonzero first and last entries".into(),
                ));
            }
        }
        Ok(ComplexSequence { values, support_offset, strict: true })
    }

    pub fn from_real(support_offset: i64, values: &[f64]) -> Self {
        Self::new(support_offset, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn support_offset(&self) -> i64 {
        self.support_offset
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest entrywise distance, treating both as living on the same index window.
    pub fn sup_diff(&self, other: &Self) -> f64 {
        let lo = self.support_offset.min(other.support_offset);
        let hi = (self.support_offset + self.len() as i64).max(other.support_offset + other.len() as i64);
        (lo..hi).map(|k| (self.get(k) - other.get(k)).norm()).fold(0.0, f64::max)
    }

    /// `gamma_k`, zero outside the support.
    pub fn get(&self, k: i64) -> C64 {
        let i = k - self.support_offset;
        if i < 0 || i >= self.values.len() as i64 {
            ZERO
        } else {
            self.values[i as usize]
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    support_offset: i64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<SequenceJson> for ComplexSequence {
    type Error = NlftError;

    fn try_from(j: SequenceJson) -> Result<Self> {
        Ok(ComplexSequence::new(j.support_offset, split_to_complex(&j.re, &j.im)?))
    }
}

impl From<ComplexSequence> for SequenceJson {
    fn from(s: ComplexSequence) -> Self {
        let (re, im) = complex_to_split(&s.values);
        SequenceJson { support_offset: s.support_offset, re, im }
    }
}

/// The transfer matrix `[[a, b], [-b*, a*]]` stored as its first row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NlftPair {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

impl NlftPair {
    pub fn new(a: LaurentPoly, b: LaurentPoly) -> Self {
        NlftPair { a, b }
    }

    pub fn identity() -> Self {
        NlftPair { a: LaurentPoly::one(), b: LaurentPoly::zero() }
    }

    /// `a*(0)`, i.e. the conjugate of the `z^0` coefficient of `a`.
    pub fn a_star_zero(&self) -> C64 {
        self.a.coeff(0).conj()
    }

    /// Number of coefficients of `b` once normalized to start at degree 0
    /// (at least 1, so the identity pair strips to one zero).
    pub fn window_len(&self) -> usize {
        let span_b = if self.b.is_zero() { 0 } else { (self.b.high_deg() - self.b.low_deg()) as usize };
        let span_a = if self.a.is_zero() { 0 } else { (-self.a.low_deg()).max(0) as usize };
        span_a.max(span_b) + 1
    }

    /// Dense coefficient vectors `(a*_0..a*_{n-1}, b_m..b_{m+n-1})` with `m`
    /// the lowest degree of `b`; this is the input layout of the inverse solvers.
    pub fn strip_vectors(&self) -> (Vec<C64>, Vec<C64>) {
        let n = self.window_len();
        let low = if self.b.is_zero() { 0 } else { self.b.low_deg() };
        let a_star = (0..n as i64).map(|j| self.a.coeff(-j).conj()).collect();
        let b = (0..n as i64).map(|j| self.b.coeff(low + j)).collect();
        (a_star, b)
    }

    /// Values of `(a, b)` on the `m`-point circle grid.
    pub fn eval_circle(&self, m: usize) -> (Vec<C64>, Vec<C64>) {
        (self.a.eval_circle(m), self.b.eval_circle(m))
    }
}

/// `(xi, eta)` for a block of `len` consecutive factors starting at index 0:
/// the transfer matrix is `[[eta*, xi], [-xi*, eta]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferPair {
    pub xi: LaurentPoly,
    pub eta: LaurentPoly,
    pub len: usize,
}

impl TransferPair {
    /// `z^len xi*`.
    pub fn xi_sharp(&self) -> LaurentPoly {
        self.xi.star().shift(self.len as i64)
    }

    /// `z^len eta*`.
    pub fn eta_sharp(&self) -> LaurentPoly {
        self.eta.star().shift(self.len as i64)
    }

    /// The pair `(eta*, xi)` shifted so `b` starts at `offset`.
    pub fn to_pair(&self, offset: i64) -> NlftPair {
        NlftPair { a: self.eta.star(), b: self.xi.shift(offset) }
    }

    /// `||xi||^2 + ||eta||^2 - 1`.
    pub fn norm_defect(&self) -> f64 {
        self.xi.norm_sqr() + self.eta.norm_sqr() - 1.0
    }
}

/// Left-to-right product of the elementary factors over Laurent polynomials.
pub fn forward_nlft_naive(g: &ComplexSequence) -> NlftPair {
    let mut a = LaurentPoly::one();
    let mut b = LaurentPoly::zero();
    for (i, &gk) in g.values().iter().enumerate() {
        let k = g.support_offset() + i as i64;
        let s = 1.0 / (1.0 + gk.norm_sqr()).sqrt();
        // c = a*1 - b * conj(g) z^{-k},  d = a * g z^k + b
        let c = a.sub(&b.mul(&LaurentPoly::monomial(gk.conj(), -k)));
        let d = a.mul(&LaurentPoly::monomial(gk, k)).add(&b);
        a = c.scale(C64::new(s, 0.0));
        b = d.scale(C64::new(s, 0.0));
    }
    NlftPair { a, b }
}

/// `(xi, eta)` coefficient vectors, each of length `values.len()`.
pub(crate) fn transfer_vectors(values: &[C64]) -> (Vec<C64>, Vec<C64>) {
    let n = values.len();
    if n == 0 {
        return (Vec::new(), vec![C64::new(1.0, 0.0)]);
    }
    if n == 1 {
        let s = 1.0 / (1.0 + values[0].norm_sqr()).sqrt();
        return (vec![values[0] * s], vec![C64::new(s, 0.0)]);
    }
    let m = n.div_ceil(2);
    let (xl, el) = transfer_vectors(&values[..m]);
    let (xr, er) = transfer_vectors(&values[m..]);
    combine_transfer(&xl, &el, &xr, &er, m, n)
}

/// `z^m p*` for a polynomial with coefficients `p[0..m]`, as a length `m+1` vector.
pub(crate) fn sharp(p: &[C64], m: usize) -> Vec<C64> {
    let mut out = vec![ZERO; m + 1];
    for (j, c) in p.iter().enumerate() {
        out[m - j] = c.conj();
    }
    out
}

/// Merge the transfer pair of `gamma[..m]` with that of `gamma[m..n]`.
pub(crate) fn combine_transfer(
    xl: &[C64],
    el: &[C64],
    xr: &[C64],
    er: &[C64],
    m: usize,
    n: usize,
) -> (Vec<C64>, Vec<C64>) {
    let el_sharp = sharp(el, m);
    let xl_sharp = sharp(xl, m);
    let t1 = convolve(&el_sharp, xr);
    let t2 = convolve(xl, er);
    let t3 = convolve(el, er);
    let t4 = convolve(&xl_sharp, xr);
    let at = |v: &Vec<C64>, i: usize| v.get(i).copied().unwrap_or(ZERO);
    let xi = (0..n).map(|i| at(&t1, i) + at(&t2, i)).collect();
    let eta = (0..n).map(|i| at(&t3, i) - at(&t4, i)).collect();
    (xi, eta)
}

/// Transfer pair of the whole sequence (indices taken relative to its offset).
pub fn transfer_pair(g: &ComplexSequence) -> TransferPair {
    let (xi, eta) = transfer_vectors(g.values());
    TransferPair { xi: LaurentPoly::new(0, xi), eta: LaurentPoly::new(0, eta), len: g.len() }
}

/// Divide-and-conquer forward transform with FFT products.
pub fn forward_nlft_fast(g: &ComplexSequence) -> NlftPair {
    transfer_pair(g).to_pair(g.support_offset())
}

/// Outcome of [`pair_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    /// Largest coefficient of `aa* + bb* - 1`.
    pub residual: f64,
    pub a_star_zero: f64,
    pub a_star_zero_imag: f64,
    pub degree_ok: bool,
    pub pass: bool,
}

/// Membership test for the image class.
pub fn pair_check(p: &NlftPair, tol: f64) -> PairReport {
    let prod = p.a.mul(&p.a.star()).add(&p.b.mul(&p.b.star())).sub(&LaurentPoly::one());
    let residual = prod.max_abs();
    let a0 = p.a_star_zero();
    let degree_ok = if p.a.is_zero() {
        false
    } else if p.b.is_zero() {
        p.a.low_deg() == 0 && p.a.high_deg() == 0
    } else {
        let (m, n) = (p.b.low_deg(), p.b.high_deg());
        p.a.high_deg() <= 0 && p.a.low_deg() >= m - n
    };
    let pass = residual <= tol && a0.re > 0.0 && a0.im.abs() <= tol && degree_ok;
    PairReport { residual, a_star_zero: a0.re, a_star_zero_imag: a0.im, degree_ok, pass }
}

/// [`pair_check`] at the default tolerance.
pub fn pair_check_default(p: &NlftPair) -> PairReport {
    pair_check(p, PAIR_CHECK_TOL)
}

/// `1 - max |b|` over a grid of `grid` points (default `16 * len(b)`).
pub fn eta_of(p: &NlftPair, grid: Option<usize>) -> f64 {
    sup_on_circle(&p.b, grid).map_or(1.0, |s| 1.0 - s)
}

/// Grid estimate of `max_T |p|`, `None` for the zero polynomial.
pub fn sup_on_circle(p: &LaurentPoly, grid: Option<usize>) -> Option<f64> {
    if p.is_zero() {
        return None;
    }
    let m = grid.unwrap_or(ETA_GRID_FACTOR * p.len()).max(4);
    Some(p.eval_circle(m).iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Multiply `b` by `z^k`, leaving `a` alone.
pub fn shift_support(p: &NlftPair, k: i64) -> NlftPair {
    NlftPair { a: p.a.clone(), b: p.b.shift(k) }
}

/// Aperiodic cross-correlation `sum_j u_{j+s} conj(v_j)` for lags `s = -(n-1)..=(n-1)`.
pub fn xcorr(u: &[C64], v: &[C64]) -> Vec<C64> {
    let rev: Vec<C64> = v.iter().rev().map(|c| c.conj()).collect();
    convolve(u, &rev)
}
