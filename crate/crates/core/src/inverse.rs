//! Inverse transforms: layer stripping and the inverse nonlinear FFT.

use num_complex::Complex64 as C64;

use crate::config::INLFFT_LEAF_SIZE;
use crate::error::{NlftError, Result};
use crate::fft::convolve;
use crate::laurent::LaurentPoly;
use crate::nlft::{combine_transfer, sharp, transfer_vectors, ComplexSequence, NlftPair, TransferPair};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `Theta(gamma) = (1+|gamma|^2)^{-1/2} [[1, -gamma], [conj(gamma), 1]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GivensRotor {
    pub gamma: C64,
}

impl GivensRotor {
    pub fn new(gamma: C64) -> Self {
        GivensRotor { gamma }
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        let s = 1.0 / (1.0 + self.gamma.norm_sqr()).sqrt();
        [
            [C64::new(s, 0.0), -self.gamma * s],
            [self.gamma.conj() * s, C64::new(s, 0.0)],
        ]
    }

    /// Row vector times the rotor: `[x, y] Theta`.
    #[inline]
    pub fn apply_row(&self, x: C64, y: C64) -> (C64, C64) {
        let s = 1.0 / (1.0 + self.gamma.norm_sqr()).sqrt();
        ((x + y * self.gamma.conj()) * s, (y - x * self.gamma) * s)
    }
}

/// Right-multiply the two-column block `[a | b]` by `Theta(gamma)` in place.
pub fn givens_apply(a: &mut [C64], b: &mut [C64], r: GivensRotor) {
    assert_eq!(a.len(), b.len(), "columns must have equal length");
    let s = 1.0 / (1.0 + r.gamma.norm_sqr()).sqrt();
    let g = r.gamma;
    let gc = g.conj();
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (x0, y0) = (*x, *y);
        *x = (x0 + y0 * gc) * s;
        *y = (y0 - x0 * g) * s;
    }
}

/// What a single rotate-and-shift step produced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripStep {
    pub gamma: C64,
    /// `a_{0,k+1}`, the new pivot.
    pub pivot: f64,
    /// The last entry of the rotated a-column, discarded by the shift.
    pub dropped: C64,
}

/// Working columns of layer stripping: `a_vec` holds the coefficients of
/// `a_k^*` and `b_vec` those of `b_k`, both of length `n - k`.
#[derive(Clone, Debug)]
pub struct StripState {
    a: Vec<C64>,
    b: Vec<C64>,
    step: usize,
}

impl StripState {
    pub fn new(a_star: &[C64], b: &[C64]) -> Result<Self> {
        if a_star.len() != b.len() {
            return Err(NlftError::InvalidInput(format!(
                "a* has {} coefficients but b has {}",
                a_star.len(),
                b.len()
            )));
        }
        Ok(StripState { a: a_star.to_vec(), b: b.to_vec(), step: 0 })
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn remaining(&self) -> usize {
        self.a.len() - self.step
    }

    pub fn a_vec(&self) -> &[C64] {
        &self.a[..self.a.len() - self.step]
    }

    pub fn b_vec(&self) -> &[C64] {
        &self.b[self.step..]
    }

    /// Frobenius norm of the current block.
    pub fn frobenius(&self) -> f64 {
        self.a_vec().iter().chain(self.b_vec()).map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// One step: read off `gamma_k`, rotate, then shift the b-column up and
    /// drop the last entry of the a-column.
    pub fn advance(&mut self) -> Result<StripStep> {
        let k = self.step;
        let len = self.a.len() - k;
        if len == 0 {
            return Err(NlftError::InvalidInput("layer stripping ran past the window".into()));
        }
        let a0 = self.a[0];
        if !(a0.re > 0.0) || !a0.re.is_finite() {
            return Err(NlftError::NonPositivePivot { step: k, value: a0.re });
        }
        let gamma = self.b[k] / a0.re;
        let r = GivensRotor::new(gamma);
        givens_apply(&mut self.a[..len], &mut self.b[k..], r);
        // In exact arithmetic the new pivot is a0 * sqrt(1+|gamma|^2), which is real.
        self.a[0].im = 0.0;
        let pivot = self.a[0].re;
        let dropped = self.a[len - 1];
        self.step += 1;
        Ok(StripStep { gamma, pivot, dropped })
    }
}

/// Generalized layer stripping for `steps` iterations on arbitrary windows.
///
/// If `steps` exceeds the window length the columns are zero-padded.
pub fn layer_strip_general(a_star: &[C64], b: &[C64], steps: usize) -> Result<ComplexSequence> {
    if a_star.len() != b.len() {
        return Err(NlftError::InvalidInput("a* and b windows differ in length".into()));
    }
    let mut a = a_star.to_vec();
    let mut bb = b.to_vec();
    if steps > a.len() {
        a.resize(steps, ZERO);
        bb.resize(steps, ZERO);
    }
    let mut state = StripState { a, b: bb, step: 0 };
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        out.push(state.advance()?.gamma);
    }
    Ok(ComplexSequence::new(0, out))
}

/// Layer stripping of a pair whose `b` starts at degree 0.
///
/// Returns one coefficient per degree of `b`; the identity pair gives the empty sequence.
pub fn layer_strip(p: &NlftPair) -> Result<ComplexSequence> {
    if p.b.is_zero() {
        return Ok(ComplexSequence::new(0, Vec::new()));
    }
    check_normalized(p)?;
    let (a_star, b) = p.strip_vectors();
    let n = a_star.len();
    layer_strip_general(&a_star, &b, n)
}

fn check_normalized(p: &NlftPair) -> Result<()> {
    if !p.b.is_zero() && p.b.low_deg() != 0 {
        return Err(NlftError::InvalidInput(format!(
            "b starts at degree {}; shift it to degree 0 first",
            p.b.low_deg()
        )));
    }
    if p.a.is_zero() || p.a.high_deg() > 0 {
        return Err(NlftError::InvalidInput("a must have highest degree 0".into()));
    }
    Ok(())
}

/// Options for [`inlfft_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InlfftOptions {
    /// Windows of at most this many coefficients are handled by layer
    /// stripping plus a forward product tree. `1` disables the cutover.
    pub leaf_size: usize,
}

impl Default for InlfftOptions {
    fn default() -> Self {
        InlfftOptions { leaf_size: 1 }
    }
}

impl InlfftOptions {
    pub fn with_leaf() -> Self {
        InlfftOptions { leaf_size: INLFFT_LEAF_SIZE }
    }
}

/// Inverse nonlinear FFT on coefficient windows of equal length.
pub fn inlfft(a_star: &[C64], b: &[C64]) -> Result<(ComplexSequence, TransferPair)> {
    inlfft_with(a_star, b, InlfftOptions::default())
}

pub fn inlfft_with(a_star: &[C64], b: &[C64], opts: InlfftOptions) -> Result<(ComplexSequence, TransferPair)> {
    if a_star.len() != b.len() {
        return Err(NlftError::InvalidInput(format!(
            "a* has {} coefficients but b has {}",
            a_star.len(),
            b.len()
        )));
    }
    let n = a_star.len();
    let mut gamma = Vec::with_capacity(n);
    let (xi, eta) = if n == 0 {
        (Vec::new(), vec![C64::new(1.0, 0.0)])
    } else {
        recurse(a_star, b, 0, opts.leaf_size.max(1), &mut gamma)?
    };
    let tp = TransferPair { xi: LaurentPoly::new(0, xi), eta: LaurentPoly::new(0, eta), len: n };
    Ok((ComplexSequence::new(0, gamma), tp))
}

/// Inverse nonlinear FFT of a pair whose `b` starts at degree 0.
pub fn inlfft_pair(p: &NlftPair) -> Result<ComplexSequence> {
    if p.b.is_zero() {
        return Ok(ComplexSequence::new(0, Vec::new()));
    }
    check_normalized(p)?;
    let (a_star, b) = p.strip_vectors();
    Ok(inlfft(&a_star, &b)?.0)
}

fn recurse(
    a: &[C64],
    b: &[C64],
    first_step: usize,
    leaf: usize,
    gamma: &mut Vec<C64>,
) -> Result<(Vec<C64>, Vec<C64>)> {
    let n = a.len();
    if n == 1 {
        let a0 = a[0];
        if !(a0.re > 0.0) || !a0.re.is_finite() {
            return Err(NlftError::NonPositivePivot { step: first_step, value: a0.re });
        }
        let g = b[0] / a0.re;
        let s = 1.0 / (1.0 + g.norm_sqr()).sqrt();
        gamma.push(g);
        return Ok((vec![g * s], vec![C64::new(s, 0.0)]));
    }
    if n <= leaf {
        let g = layer_strip_general(a, b, n).map_err(|e| match e {
            NlftError::NonPositivePivot { step, value } => {
                NlftError::NonPositivePivot { step: step + first_step, value }
            }
            other => other,
        })?;
        let (xi, eta) = transfer_vectors(g.values());
        gamma.extend_from_slice(g.values());
        return Ok((xi, eta));
    }
    let m = n.div_ceil(2);
    let (xl, el) = recurse(&a[..m], &b[..m], first_step, leaf, gamma)?;

    // a_m^* = z^{-m}(eta^# a^* + xi^# b),  b_m = z^{-m}(eta b - xi a^*),
    // keeping the coefficients of z^m..z^{n-1} before the division.
    let el_sharp = sharp(&el, m);
    let xl_sharp = sharp(&xl, m);
    let p1 = convolve(&el_sharp, a);
    let p2 = convolve(&xl_sharp, b);
    let p3 = convolve(&el, b);
    let p4 = convolve(&xl, a);
    let at = |v: &Vec<C64>, i: usize| v.get(i).copied().unwrap_or(ZERO);
    let am: Vec<C64> = (m..n).map(|i| at(&p1, i) + at(&p2, i)).collect();
    let bm: Vec<C64> = (m..n).map(|i| at(&p3, i) - at(&p4, i)).collect();

    let (xr, er) = recurse(&am, &bm, first_step + m, leaf, gamma)?;
    Ok(combine_transfer(&xl, &el, &xr, &er, m, n))
}
