//! Quantum signal processing phase factors through the inverse transform.
//!
//! QSP: `U = e^{i psi_0 Z} prod_k W(x) e^{i psi_k Z}` with
//! `W(x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]]`; the phases are
//! `psi_k = arctan(gamma_k)` for the real sequence whose transform has
//! `b(e^{2i theta}) = e^{i n theta} f(cos theta)`.
//!
//! GQSP: `R(psi_0, phi_0) prod_k diag(z, 1) R(psi_k, phi_k)` whose upper-right
//! entry equals `Q(z) = b(z)`; `psi_k = arctan|gamma_k|`, `phi_k = Arg gamma_k`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::complement::complete_b_outer;
use crate::config::{ADMISSIBILITY_SLACK, PHASE_CHECK_GRID, REAL_GAMMA_TOL};
use crate::error::{NlftError, Result};
use crate::inverse::inlfft;
use crate::laurent::{complex_to_split, split_to_complex, LaurentPoly};
use crate::nlft::ComplexSequence;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

type M2 = [[C64; 2]; 2];

fn mat_mul(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseKind {
    Qsp,
    Gqsp,
}

/// Phase factors plus the residual measured by the solver (0 when the set
/// was produced directly from a sequence).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseFactorSet {
    pub kind: PhaseKind,
    pub psi: Vec<f64>,
    pub phi: Option<Vec<f64>>,
    pub residual: f64,
}

impl PhaseFactorSet {
    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }
}

/// Target functions: a real Chebyshev series for QSP or complex monomial
/// coefficients for GQSP.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetPoly {
    /// `f(x) = sum_k cheb[k] T_k(x)`, of degree `cheb.len() - 1`.
    Qsp { cheb: Vec<f64> },
    /// `Q(z) = sum_k (re[k] + i im[k]) z^k`.
    Gqsp { re: Vec<f64>, im: Vec<f64> },
}

impl TargetPoly {
    pub fn qsp(cheb: Vec<f64>) -> Self {
        TargetPoly::Qsp { cheb }
    }

    pub fn gqsp(coeffs: &[C64]) -> Self {
        let (re, im) = complex_to_split(coeffs);
        TargetPoly::Gqsp { re, im }
    }

    pub fn degree(&self) -> usize {
        match self {
            TargetPoly::Qsp { cheb } => cheb.len().saturating_sub(1),
            TargetPoly::Gqsp { re, .. } => re.len().saturating_sub(1),
        }
    }
}

/// Clenshaw evaluation of a Chebyshev series.
pub fn chebyshev_eval(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// `cos(pi (j + 1/2) / m)` for `j = 0..m`.
pub fn chebyshev_grid(m: usize) -> Vec<f64> {
    (0..m).map(|j| (PI * (j as f64 + 0.5) / m as f64).cos()).collect()
}

fn cheb_of(f: &TargetPoly) -> Result<&[f64]> {
    match f {
        TargetPoly::Qsp { cheb } => Ok(cheb),
        TargetPoly::Gqsp { .. } => Err(NlftError::InvalidInput("expected a Chebyshev (QSP) target".into())),
    }
}

/// The real polynomial `b` of degree `n` with `b(e^{2i theta}) = e^{i n theta} f(cos theta)`.
pub fn chebyshev_to_b(f: &TargetPoly, n: usize) -> Result<LaurentPoly> {
    let cheb = cheb_of(f)?;
    let mut coeffs = vec![0.0; n + 1];
    for (k, &ck) in cheb.iter().enumerate() {
        if ck == 0.0 {
            continue;
        }
        if k > n {
            return Err(NlftError::InvalidInput(format!("term T_{k} exceeds degree {n}")));
        }
        if (n + k) % 2 == 1 {
            return Err(NlftError::InvalidInput(format!("term T_{k} has the wrong parity for degree {n}")));
        }
        coeffs[(n + k) / 2] += 0.5 * ck;
        coeffs[(n - k) / 2] += 0.5 * ck;
    }
    let grid = chebyshev_grid((4 * n).max(4));
    let sup = grid.iter().map(|&x| chebyshev_eval(cheb, x).abs()).fold(0.0, f64::max);
    if sup > 1.0 + ADMISSIBILITY_SLACK {
        return Err(NlftError::NotAdmissible { min: 1.0 - sup * sup });
    }
    Ok(LaurentPoly::from_real(0, &coeffs))
}

/// `psi_k = arctan(gamma_k)` for a real sequence.
pub fn qsp_phases_from_gamma(g: &ComplexSequence) -> Result<PhaseFactorSet> {
    let mut psi = Vec::with_capacity(g.len());
    for (k, x) in g.values().iter().enumerate() {
        if x.im.abs() > REAL_GAMMA_TOL {
            return Err(NlftError::NonReal { index: k, imag: x.im.abs() });
        }
        psi.push(x.re.atan());
    }
    Ok(PhaseFactorSet { kind: PhaseKind::Qsp, psi, phi: None, residual: 0.0 })
}

/// `psi_k = arctan|gamma_k|`, `phi_k = Arg(gamma_k)` with `Arg(0) = 0`.
pub fn gqsp_phases_from_gamma(g: &ComplexSequence) -> PhaseFactorSet {
    let psi = g.values().iter().map(|x| x.norm().atan()).collect();
    let phi = g.values().iter().map(|x| if *x == ZERO { 0.0 } else { x.arg() }).collect();
    PhaseFactorSet { kind: PhaseKind::Gqsp, psi, phi: Some(phi), residual: 0.0 }
}

/// `(u, v)` of the QSP unitary `[[u, i v], [i v*, u*]]`-type product at `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QspValue {
    pub u: C64,
    pub v: C64,
}

/// The full 2x2 QSP product at `x`.
pub fn qsp_matrix(psi: &[f64], x: f64) -> M2 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let w: M2 = [[C64::new(x, 0.0), I * s], [I * s, C64::new(x, 0.0)]];
    let rot = |p: f64| -> M2 { [[C64::from_polar(1.0, p), ZERO], [ZERO, C64::from_polar(1.0, -p)]] };
    let mut u = rot(psi.first().copied().unwrap_or(0.0));
    for &p in psi.iter().skip(1) {
        u = mat_mul(&mat_mul(&u, &w), &rot(p));
    }
    u
}

pub fn qsp_evaluate(phases: &PhaseFactorSet, xs: &[f64]) -> Result<Vec<QspValue>> {
    if phases.kind != PhaseKind::Qsp {
        return Err(NlftError::InvalidInput("expected QSP phases".into()));
    }
    xs.iter()
        .map(|&x| {
            if !(x.abs() <= 1.0) {
                return Err(NlftError::InvalidInput(format!("x = {x} lies outside [-1, 1]")));
            }
            let m = qsp_matrix(&phases.psi, x);
            Ok(QspValue { u: m[0][0], v: -I * m[0][1] })
        })
        .collect()
}

/// `R(psi, phi) = [[cos psi, e^{i phi} sin psi], [-e^{-i phi} sin psi, cos psi]]`.
fn rotor(psi: f64, phi: f64) -> M2 {
    let (s, c) = psi.sin_cos();
    [
        [C64::new(c, 0.0), C64::from_polar(s, phi)],
        [-C64::from_polar(s, -phi), C64::new(c, 0.0)],
    ]
}

/// The full 2x2 GQSP product at `z`.
pub fn gqsp_matrix(psi: &[f64], phi: &[f64], z: C64) -> M2 {
    let mut m = rotor(psi.first().copied().unwrap_or(0.0), phi.first().copied().unwrap_or(0.0));
    for (p, f) in psi.iter().zip(phi).skip(1) {
        let r = rotor(*p, *f);
        // diag(z, 1) R
        let dr: M2 = [[z * r[0][0], z * r[0][1]], [r[1][0], r[1][1]]];
        m = mat_mul(&m, &dr);
    }
    m
}

/// Which corner of the GQSP product carries the target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GqspCorner {
    /// `Q` sits in the upper-right entry of the product.
    #[default]
    UpperRight,
    /// Upper-left entry after right-multiplying by `[[0, -1], [1, 0]]`,
    /// which moves the upper-right entry into the upper-left corner.
    UpperLeft,
}

pub fn gqsp_evaluate(phases: &PhaseFactorSet, zs: &[C64]) -> Result<Vec<C64>> {
    gqsp_evaluate_corner(phases, zs, GqspCorner::UpperRight)
}

pub fn gqsp_evaluate_corner(phases: &PhaseFactorSet, zs: &[C64], corner: GqspCorner) -> Result<Vec<C64>> {
    let phi = match (&phases.kind, &phases.phi) {
        (PhaseKind::Gqsp, Some(phi)) if phi.len() == phases.psi.len() => phi,
        _ => return Err(NlftError::InvalidInput("expected GQSP phases with one phi per psi".into())),
    };
    zs.iter()
        .map(|&z| {
            if (z.norm() - 1.0).abs() > 1e-12 {
                return Err(NlftError::InvalidInput(format!("z = {z} is off the unit circle")));
            }
            let m = gqsp_matrix(&phases.psi, phi, z);
            Ok(match corner {
                GqspCorner::UpperRight => m[0][1],
                GqspCorner::UpperLeft => {
                    let j: M2 = [[ZERO, C64::new(-1.0, 0.0)], [C64::new(1.0, 0.0), ZERO]];
                    mat_mul(&m, &j)[0][0]
                }
            })
        })
        .collect()
}

fn padded_strip_vectors(b: &LaurentPoly, n: usize) -> Result<(Vec<C64>, Vec<C64>)> {
    let pair = complete_b_outer(b)?;
    let a_star: Vec<C64> = (0..=n as i64).map(|j| pair.a.coeff(-j).conj()).collect();
    let bv: Vec<C64> = (0..=n as i64).map(|j| b.coeff(j)).collect();
    Ok((a_star, bv))
}

/// Phases `psi_0..psi_n` with `Im u_n(x) = f(x)`.
pub fn solve_qsp(f: &TargetPoly) -> Result<PhaseFactorSet> {
    let cheb = cheb_of(f)?;
    let n = f.degree();
    let b = chebyshev_to_b(f, n)?;
    let (a_star, bv) = padded_strip_vectors(&b, n)?;
    let (gamma, _) = inlfft(&a_star, &bv)?;
    let mut phases = qsp_phases_from_gamma(&gamma)?;
    let xs = chebyshev_grid(PHASE_CHECK_GRID);
    let vals = qsp_evaluate(&phases, &xs)?;
    phases.residual =
        xs.iter().zip(&vals).map(|(&x, v)| (v.u.im - chebyshev_eval(cheb, x)).abs()).fold(0.0, f64::max);
    Ok(phases)
}

/// Phases whose GQSP product has `Q` in the upper-right corner.
pub fn solve_gqsp(q: &TargetPoly) -> Result<PhaseFactorSet> {
    let TargetPoly::Gqsp { re, im } = q else {
        return Err(NlftError::InvalidInput("expected a monomial (GQSP) target".into()));
    };
    let coeffs = split_to_complex(re, im)?;
    let n = coeffs.len().saturating_sub(1);
    let b = LaurentPoly::new(0, coeffs.clone());
    let (a_star, bv) = padded_strip_vectors(&b, n)?;
    let (gamma, _) = inlfft(&a_star, &bv)?;
    let mut phases = gqsp_phases_from_gamma(&gamma);
    let zs: Vec<C64> =
        (0..PHASE_CHECK_GRID).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / PHASE_CHECK_GRID as f64)).collect();
    let vals = gqsp_evaluate(&phases, &zs)?;
    let target = LaurentPoly::new(0, coeffs).eval_circle(PHASE_CHECK_GRID);
    phases.residual = vals.iter().zip(&target).map(|(v, t)| (v - t).norm()).fold(0.0, f64::max);
    Ok(phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn chebyshev_to_b_examples() {
        let b = chebyshev_to_b(&TargetPoly::qsp(vec![0.0, 1.0]), 1).unwrap();
        assert_eq!(b, LaurentPoly::from_real(0, &[0.5, 0.5]));
        assert!(chebyshev_to_b(&TargetPoly::qsp(vec![0.0]), 0).unwrap().is_zero());
        let b = chebyshev_to_b(&TargetPoly::qsp(vec![0.0, 0.0, 1.0]), 2).unwrap();
        assert_eq!(b, LaurentPoly::from_real(0, &[0.5, 0.0, 0.5]));
        assert!(chebyshev_to_b(&TargetPoly::qsp(vec![0.0, 1.0]), 2).is_err());
        assert!(chebyshev_to_b(&TargetPoly::qsp(vec![0.0, 1.5]), 1).is_err());
    }

    #[test]
    fn phase_conversions() {
        let p = qsp_phases_from_gamma(&ComplexSequence::from_real(0, &[0.0, 0.0])).unwrap();
        assert_eq!(p.psi, vec![0.0, 0.0]);
        let p = qsp_phases_from_gamma(&ComplexSequence::from_real(0, &[1.0, 1.0])).unwrap();
        assert!(p.psi.iter().all(|x| (x - FRAC_PI_4).abs() < 1e-15));
        let p = qsp_phases_from_gamma(&ComplexSequence::from_real(0, &[1.0 / 3f64.sqrt()])).unwrap();
        assert!((p.psi[0] - PI / 6.0).abs() < 1e-15);
        assert!(qsp_phases_from_gamma(&ComplexSequence::new(0, vec![c(0.0, 1e-3)])).is_err());

        let p = gqsp_phases_from_gamma(&ComplexSequence::from_real(0, &[0.0, 1.0 / 3f64.sqrt()]));
        assert!((p.psi[1] - PI / 6.0).abs() < 1e-15 && p.psi[0] == 0.0);
        assert_eq!(p.phi, Some(vec![0.0, 0.0]));
        let p = gqsp_phases_from_gamma(&ComplexSequence::new(0, vec![c(0.0, 1.0)]));
        assert!((p.psi[0] - FRAC_PI_4).abs() < 1e-15 && (p.phi.unwrap()[0] - PI / 2.0).abs() < 1e-15);
        assert!(gqsp_phases_from_gamma(&ComplexSequence::new(0, vec![])).is_empty());
    }

    #[test]
    fn qsp_evaluate_examples() {
        let id = PhaseFactorSet { kind: PhaseKind::Qsp, psi: vec![0.0], phi: None, residual: 0.0 };
        assert_eq!(qsp_evaluate(&id, &[0.3]).unwrap()[0].u, c(1.0, 0.0));
        let p = PhaseFactorSet { kind: PhaseKind::Qsp, psi: vec![FRAC_PI_4, FRAC_PI_4], phi: None, residual: 0.0 };
        for x in [-0.9, 0.1, 0.7] {
            let v = qsp_evaluate(&p, &[x]).unwrap()[0];
            assert!((v.u - c(0.0, x)).norm() < 1e-15);
            assert!((v.u.norm_sqr() + v.v.norm_sqr() - 1.0).abs() < 1e-14);
        }
        assert!(qsp_evaluate(&p, &[1.5]).is_err());
    }

    #[test]
    fn gqsp_evaluate_examples() {
        let p = PhaseFactorSet { kind: PhaseKind::Gqsp, psi: vec![0.0, PI / 6.0], phi: Some(vec![0.0, 0.0]), residual: 0.0 };
        assert!((gqsp_evaluate(&p, &[c(1.0, 0.0)]).unwrap()[0] - c(0.5, 0.0)).norm() < 1e-15);
        let z = C64::from_polar(1.0, 0.4);
        assert!((gqsp_evaluate(&p, &[z]).unwrap()[0] - z * 0.5).norm() < 1e-15);
        let zero = PhaseFactorSet { kind: PhaseKind::Gqsp, psi: vec![0.0; 3], phi: Some(vec![0.3; 3]), residual: 0.0 };
        assert_eq!(gqsp_evaluate(&zero, &[z]).unwrap()[0], ZERO);
        assert!(gqsp_evaluate(&zero, &[c(1.1, 0.0)]).is_err());
    }

    #[test]
    fn solve_examples() {
        let p = solve_qsp(&TargetPoly::qsp(vec![0.0, 0.999])).unwrap();
        assert!(p.residual < 1e-6);
        assert!(p.psi.iter().all(|x| (x - FRAC_PI_4).abs() < 0.05));
        let p = solve_qsp(&TargetPoly::qsp(vec![0.0])).unwrap();
        assert_eq!(p.psi, vec![0.0]);
        let p = solve_qsp(&TargetPoly::qsp(vec![0.0, 0.0, 0.0, 0.8])).unwrap();
        assert!(p.residual < 1e-8);

        let p = solve_gqsp(&TargetPoly::gqsp(&[c(0.0, 0.0), c(0.5, 0.0)])).unwrap();
        assert!(p.residual < 1e-10);
        assert!(p.psi[0].abs() < 1e-12 && (p.psi[1] - PI / 6.0).abs() < 1e-12);
        let p = solve_gqsp(&TargetPoly::gqsp(&[c(0.3, 0.0)])).unwrap();
        assert!((p.psi[0] - (0.3 / 0.91f64.sqrt()).atan()).abs() < 1e-14);
        assert!(p.residual < 1e-10);
    }

    #[test]
    fn target_json() {
        let t: TargetPoly = serde_json::from_str(r#"{"kind":"qsp","cheb":[0,0.5]}"#).unwrap();
        assert_eq!(t.degree(), 1);
        let s = serde_json::to_string(&PhaseFactorSet { kind: PhaseKind::Qsp, psi: vec![0.5], phi: None, residual: 0.0 }).unwrap();
        assert_eq!(s, r#"{"kind":"qsp","psi":[0.5],"phi":null,"residual":0.0}"#);
    }
}
