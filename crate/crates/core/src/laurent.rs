//! Laurent polynomials with complex coefficients.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{NlftError, Result};
use crate::fft;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `p(z) = sum_j coeffs[j] z^{low_deg + j}`.
///
/// Only exact zeros are trimmed from either end, so tiny computed
/// coefficients keep their place in the degree window.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LaurentJson", into = "LaurentJson")]
pub struct LaurentPoly {
    coeffs: Vec<C64>,
    low_deg: i64,
}

impl LaurentPoly {
    pub fn new(low_deg: i64, coeffs: Vec<C64>) -> Self {
        let mut p = LaurentPoly { coeffs, low_deg };
        p.trim();
        p
    }

    pub fn from_real(low_deg: i64, coeffs: &[f64]) -> Self {
        Self::new(low_deg, coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly { coeffs: Vec::new(), low_deg: 0 }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(0, vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: C64, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| *c != ZERO) else {
            self.coeffs.clear();
            self.low_deg = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| *c != ZERO).unwrap();
        if first > 0 || last + 1 < self.coeffs.len() {
            self.coeffs.truncate(last + 1);
            self.coeffs.drain(..first);
            self.low_deg += first as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_deg(&self) -> i64 {
        self.low_deg
    }

    /// Highest exponent; equals `low_deg - 1` for the zero polynomial.
    pub fn high_deg(&self) -> i64 {
        self.low_deg + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k` (zero outside the stored window).
    pub fn coeff(&self, k: i64) -> C64 {
        let i = k - self.low_deg;
        if i < 0 || i >= self.coeffs.len() as i64 {
            ZERO
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Dense coefficients of exponents `lo..=hi`, zero-padded.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<C64> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    pub fn star(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
            low_deg: -self.high_deg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.low_deg + other.low_deg, fft::convolve(&self.coeffs, &other.coeffs))
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { coeffs: self.coeffs.clone(), low_deg: self.low_deg + k }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.low_deg, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        if self.is_zero() {
            return other.scale(C64::new(sign, 0.0));
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.low_deg.min(other.low_deg);
        let hi = self.high_deg().max(other.high_deg());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k) * sign).collect();
        Self::new(lo, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    /// Horner evaluation at a nonzero point.
    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.low_deg as i32)
    }

    /// Values at `e^{2 pi i j/m}` for `j = 0..m`.
    pub fn eval_circle(&self, m: usize) -> Vec<C64> {
        fft::eval_on_circle(self.low_deg, &self.coeffs, m)
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of squared coefficient moduli.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly(low_deg={}, {:?})", self.low_deg, self.coeffs)
    }
}

pub fn lp_star(p: &LaurentPoly) -> LaurentPoly {
    p.star()
}

pub fn lp_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.mul(q)
}

pub fn lp_eval_circle(p: &LaurentPoly, m: usize) -> Vec<C64> {
    p.eval_circle(m)
}

pub fn lp_shift(p: &LaurentPoly, k: i64) -> LaurentPoly {
    p.shift(k)
}

pub fn lp_add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.add(q)
}

pub fn lp_sub(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.sub(q)
}

pub fn lp_scale(p: &LaurentPoly, c: C64) -> LaurentPoly {
    p.scale(c)
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    low_deg: i64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<LaurentJson> for LaurentPoly {
    type Error = NlftError;

    fn try_from(j: LaurentJson) -> Result<Self> {
        Ok(LaurentPoly::new(j.low_deg, split_to_complex(&j.re, &j.im)?))
    }
}

impl From<LaurentPoly> for LaurentJson {
    fn from(p: LaurentPoly) -> Self {
        let (re, im) = complex_to_split(&p.coeffs);
        LaurentJson { low_deg: p.low_deg, re, im }
    }
}

pub(crate) fn split_to_complex(re: &[f64], im: &[f64]) -> Result<Vec<C64>> {
    if re.len() != im.len() {
        return Err(NlftError::InvalidInput(format!(
            "re has {} entries but im has {}",
            re.len(),
            im.len()
        )));
    }
    if re.iter().chain(im).any(|x| !x.is_finite()) {
        return Err(NlftError::InvalidInput("non-finite coefficient".into()));
    }
    Ok(re.iter().zip(im).map(|(&x, &y)| C64::new(x, y)).collect())
}

pub(crate) fn complex_to_split(v: &[C64]) -> (Vec<f64>, Vec<f64>) {
    (v.iter().map(|c| c.re).collect(), v.iter().map(|c| c.im).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn star_examples() {
        let p = LaurentPoly::constant(c(1.0, 2.0));
        assert_eq!(p.star(), LaurentPoly::constant(c(1.0, -2.0)));
        let p = LaurentPoly::monomial(c(0.0, 1.0), 1);
        assert_eq!(p.star(), LaurentPoly::monomial(c(0.0, -1.0), -1));
        let p = LaurentPoly::from_real(0, &[1.0, 2.0]);
        assert_eq!(p.star(), LaurentPoly::from_real(-1, &[2.0, 1.0]));
    }

    #[test]
    fn mul_examples() {
        let p = LaurentPoly::from_real(0, &[1.0, 1.0]);
        let q = LaurentPoly::from_real(0, &[1.0, -1.0]);
        assert_eq!(p.mul(&q), LaurentPoly::from_real(0, &[1.0, 0.0, -1.0]));
        let p = LaurentPoly::from_real(-1, &[1.0]);
        let q = LaurentPoly::from_real(1, &[1.0]);
        assert_eq!(p.mul(&q), LaurentPoly::one());
        let h = LaurentPoly::from_real(0, &[0.5, 0.5]);
        assert_eq!(h.mul(&h.star()), LaurentPoly::from_real(-1, &[0.25, 0.5, 0.25]));
    }

    #[test]
    fn eval_circle_examples() {
        let v = LaurentPoly::one().eval_circle(4);
        assert!(v.iter().all(|x| (x - c(1.0, 0.0)).norm() < 1e-15));
        let v = LaurentPoly::monomial(c(1.0, 0.0), 1).eval_circle(4);
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (x, y) in v.iter().zip(&want) {
            assert!((x - y).norm() < 1e-15);
        }
        let v = LaurentPoly::from_real(0, &[0.5, 0.5]).eval_circle(2);
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-15 && v[1].norm() < 1e-15);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(LaurentPoly::one().shift(3), LaurentPoly::monomial(c(1.0, 0.0), 3));
        let p = LaurentPoly::from_real(-1, &[1.0, 0.0, 1.0]);
        assert_eq!(p.shift(1), LaurentPoly::from_real(0, &[1.0, 0.0, 1.0]));
        let b = LaurentPoly::from_real(2, &[1.0, 3.0]);
        assert_eq!(b.shift(-2).low_deg(), 0);
    }

    #[test]
    fn trimming_is_exact() {
        let p = LaurentPoly::new(-2, vec![ZERO, c(1e-300, 0.0), c(1.0, 0.0), ZERO]);
        assert_eq!(p.low_deg(), -1);
        assert_eq!(p.len(), 2);
        let z = LaurentPoly::new(5, vec![ZERO, ZERO]);
        assert!(z.is_zero());
        assert_eq!(z.low_deg(), 0);
        assert_eq!(z, LaurentPoly::zero());
    }

    #[test]
    fn add_sub_cancel() {
        let p = LaurentPoly::from_real(-1, &[1.0, 2.0, 3.0]);
        assert!(p.sub(&p).is_zero());
        let q = LaurentPoly::from_real(3, &[1.0]);
        let s = p.add(&q);
        assert_eq!(s.low_deg(), -1);
        assert_eq!(s.high_deg(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let p = LaurentPoly::new(-3, vec![c(0.1, -0.2), c(1.0 / 3.0, 7.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"low_deg\":-3"));
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"low_deg":0,"re":[1],"im":[]}"#).is_err());
    }

    #[test]
    fn eval_matches_circle() {
        let p = LaurentPoly::new(-2, vec![c(1.0, 0.5), c(-0.3, 0.2), c(0.0, 1.0), c(2.0, 0.0)]);
        let v = p.eval_circle(7);
        for (j, x) in v.iter().enumerate() {
            let z = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 7.0);
            assert!((p.eval(z) - x).norm() < 1e-13);
        }
    }
}
