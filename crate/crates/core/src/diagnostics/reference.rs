//! Double-double reference computations: layer stripping and the outer
//! complement of a double precision `b`, used as ground truth when measuring
//! per-entry errors of the double precision solvers.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
use twofloat::TwoFloat;

use crate::config::ROOT_SNAP_TOL;
use crate::error::{NlftError, Result};
use crate::roots::poly_roots;

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    re: TwoFloat,
    im: TwoFloat,
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

impl Dd {
    pub const ZERO: Dd = Dd { re: TwoFloat::from_f64(0.0), im: TwoFloat::from_f64(0.0) };

    pub fn from_c64(z: C64) -> Self {
        Dd { re: tf(z.re), im: tf(z.im) }
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re.hi() + self.re.lo(), self.im.hi() + self.im.lo())
    }

    fn conj(self) -> Self {
        Dd { re: self.re, im: -self.im }
    }

    fn norm_sqr(self) -> TwoFloat {
        self.re * self.re + self.im * self.im
    }

    fn scale(self, s: TwoFloat) -> Self {
        Dd { re: self.re * s, im: self.im * s }
    }

    fn div(self, o: Dd) -> Dd {
        let den = o.norm_sqr();
        Dd {
            re: (self.re * o.re + self.im * o.im) / den,
            im: (self.im * o.re - self.re * o.im) / den,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        Dd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        Dd { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        Dd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

/// Layer stripping in double-double on double-double windows.
pub fn strip_dd(a_star: &[Dd], b: &[Dd]) -> Result<Vec<C64>> {
    if a_star.len() != b.len() {
        return Err(NlftError::InvalidInput("a* and b windows differ in length".into()));
    }
    let n = a_star.len();
    let mut a = a_star.to_vec();
    let mut bb = b.to_vec();
    let one = tf(1.0);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let len = n - k;
        let a0 = a[0].re;
        if !(a0 > 0.0) {
            return Err(NlftError::NonPositivePivot { step: k, value: a0.hi() });
        }
        let g = bb[k].scale(one / a0);
        out.push(g.to_c64());
        let s = one / (one + g.norm_sqr()).sqrt();
        let gc = g.conj();
        for j in 0..len {
            let (x, y) = (a[j], bb[k + j]);
            a[j] = (x + y * gc).scale(s);
            bb[k + j] = (y - x * g).scale(s);
        }
        a[0].im = tf(0.0);
    }
    Ok(out)
}

/// Same iteration as [`crate::inverse::layer_strip_general`] with `steps = n`,
/// carried out with roughly 106-bit significands.
pub fn reference_layer_strip(a_star: &[C64], b: &[C64]) -> Result<Vec<C64>> {
    let a: Vec<Dd> = a_star.iter().map(|&z| Dd::from_c64(z)).collect();
    let bb: Vec<Dd> = b.iter().map(|&z| Dd::from_c64(z)).collect();
    strip_dd(&a, &bb)
}

fn horner_dd(c: &[Dd], z: Dd) -> (Dd, Dd) {
    let mut p = Dd::ZERO;
    let mut dp = Dd::ZERO;
    for &x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
    }
    (p, dp)
}

/// Coefficients `c_0..c_d` of the outer `a*` for the polynomial `b` (given
/// by its coefficients from degree 0), in double-double. Roots come from the
/// double precision solver and are refined by Newton steps in double-double.
///
/// Fails if `1 - bb*` has roots on the unit circle.
pub fn outer_a_star_dd(b: &[C64]) -> Result<Vec<Dd>> {
    let d = b.len().saturating_sub(1);
    let bd: Vec<Dd> = b.iter().map(|&z| Dd::from_c64(z)).collect();
    let norm_sq = bd.iter().fold(tf(0.0), |acc, x| acc + x.norm_sqr());
    let target = tf(1.0) - norm_sq;
    if d == 0 {
        return Ok(vec![Dd { re: target.sqrt(), im: tf(0.0) }]);
    }
    // z^d (1 - b b*)
    let mut p = vec![Dd::ZERO; 2 * d + 1];
    for (i, &x) in bd.iter().enumerate() {
        for (j, &y) in bd.iter().enumerate() {
            p[i + d - j] = p[i + d - j] - x * y.conj();
        }
    }
    p[d].re += tf(1.0);
    let p64: Vec<C64> = p.iter().map(|x| x.to_c64()).collect();
    let roots = poly_roots(&p64)?;
    let mut outside = Vec::with_capacity(d);
    for r in roots {
        if (r.norm() - 1.0).abs() <= ROOT_SNAP_TOL {
            return Err(NlftError::Precondition("1 - bb* has roots on the unit circle".into()));
        }
        if r.norm() > 1.0 {
            let mut z = Dd::from_c64(r);
            let (mut v, _) = horner_dd(&p, z);
            for _ in 0..4 {
                let (_, dv) = horner_dd(&p, z);
                if !(dv.norm_sqr() > 0.0) {
                    break;
                }
                let cand = z - v.div(dv);
                let (vc, _) = horner_dd(&p, cand);
                // keep only steps that reduce the residual
                if !(vc.norm_sqr() < v.norm_sqr()) {
                    break;
                }
                z = cand;
                v = vc;
            }
            outside.push(z);
        }
    }
    if outside.len() != d {
        return Err(NlftError::RootPairing(format!("{} roots outside the disk, expected {d}", outside.len())));
    }
    // prod (1 - z / alpha)
    let mut c = vec![Dd::ZERO; d + 1];
    c[0] = Dd { re: tf(1.0), im: tf(0.0) };
    let one = Dd { re: tf(1.0), im: tf(0.0) };
    for (m, &alpha) in outside.iter().enumerate() {
        let inv = one.div(alpha);
        for j in (1..=m + 1).rev() {
            c[j] = c[j] - c[j - 1] * inv;
        }
    }
    let norm = c.iter().fold(tf(0.0), |acc, x| acc + x.norm_sqr());
    let lambda = (target / norm).sqrt();
    for x in c.iter_mut() {
        *x = x.scale(lambda);
    }
    c[0].im = tf(0.0);
    Ok(c)
}

/// `a*` of the flipped pair: `a_no* = omega z^d (a_o*)*`, i.e. the reversed
/// conjugated coefficients with the sign making the constant term positive.
pub fn flip_a_star_dd(a_star: &[Dd]) -> Vec<Dd> {
    let mut out: Vec<Dd> = a_star.iter().rev().map(|x| x.conj()).collect();
    if out[0].re < 0.0 {
        for x in out.iter_mut() {
            *x = Dd { re: -x.re, im: -x.im };
        }
    }
    out[0].im = tf(0.0);
    out
}
