//! Complementary polynomials: given `b`, find `a` with `aa* + bb* = 1`.
//!
//! Every complement is determined by a choice of roots of `z^d (1 - bb*)`,
//! one from each reflection pair `{alpha, 1/conj(alpha)}`. The outer
//! complement takes every root outside the closed disk.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::config::{
    ADMISSIBILITY_SLACK, ENUMERATE_DEGREE_CAP, ETA_GRID_FACTOR, OUTER_ROOT_DEGREE_CAP, ROOT_CLUSTER_TOL, ROOT_PAIR_TOL,
    ROOT_SNAP_TOL,
};
use crate::error::{NlftError, Result};
use crate::fft::{coeffs_from_circle, convolve};
use crate::laurent::{complex_to_split, split_to_complex, LaurentPoly};
use crate::nlft::NlftPair;
use crate::roots::{poly_roots, zeros_inside};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Distinct nonzero roots with multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RootJson", into = "RootJson")]
pub struct RootMultiset {
    roots: Vec<C64>,
    mult: Vec<usize>,
}

impl RootMultiset {
    pub fn new(roots: Vec<C64>, mult: Vec<usize>) -> Result<Self> {
        if roots.len() != mult.len() {
            return Err(NlftError::InvalidInput("roots and multiplicities differ in length".into()));
        }
        if roots.iter().any(|r| *r == ZERO || !r.re.is_finite() || !r.im.is_finite()) {
            return Err(NlftError::InvalidInput("roots must be finite and nonzero".into()));
        }
        Ok(RootMultiset { roots, mult })
    }

    /// Groups numerically coincident values (within the clustering tolerance).
    pub fn from_values(values: &[C64]) -> Result<Self> {
        let mut roots: Vec<C64> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for &v in values {
            match roots.iter().position(|r| same_root(*r, v)) {
                Some(i) => mult[i] += 1,
                None => {
                    roots.push(v);
                    mult.push(1);
                }
            }
        }
        Self::new(roots, mult)
    }

    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    /// Equivalence classes under `alpha ~ 1/conj(alpha)`, as index lists.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.roots[i], self.roots[j]);
                if same_root(a, b) || are_partners(a, b) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut label: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            match label[r] {
                Some(c) => out[c].push(i),
                None => {
                    label[r] = Some(out.len());
                    out.push(vec![i]);
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    re: Vec<f64>,
    im: Vec<f64>,
    mult: Vec<usize>,
}

impl TryFrom<RootJson> for RootMultiset {
    type Error = NlftError;

    fn try_from(j: RootJson) -> Result<Self> {
        RootMultiset::new(split_to_complex(&j.re, &j.im)?, j.mult)
    }
}

impl From<RootMultiset> for RootJson {
    fn from(r: RootMultiset) -> Self {
        let (re, im) = complex_to_split(&r.roots);
        RootJson { re, im, mult: r.mult }
    }
}

fn same_root(a: C64, b: C64) -> bool {
    (a - b).norm() <= ROOT_CLUSTER_TOL * a.norm().max(1.0)
}

fn are_partners(a: C64, b: C64) -> bool {
    (a * b.conj() - 1.0).norm() <= ROOT_PAIR_TOL
}

fn on_circle(a: C64) -> bool {
    (a.norm() - 1.0).abs() <= ROOT_SNAP_TOL
}

/// Counting function: product over classes of 1 (class meets the circle)
/// or `1 + |class|/2`.
pub fn counting_n(r: &RootMultiset) -> Result<u64> {
    let mut total: u64 = 1;
    for class in r.classes() {
        let size: usize = class.iter().map(|&i| r.mult[i]).sum();
        if size % 2 == 1 {
            return Err(NlftError::InvalidInput(format!("root class of odd size {size}")));
        }
        let touches = class.iter().any(|&i| on_circle(r.roots[i]));
        if !touches {
            total = total.saturating_mul(1 + size as u64 / 2);
        }
    }
    Ok(total)
}

/// Coefficients of `z^d (1 - q q*)` for a polynomial `q` of degree `d`.
pub fn one_minus_bbstar(q: &[C64]) -> Vec<C64> {
    let d = q.len() - 1;
    let rev: Vec<C64> = q.iter().rev().map(|c| c.conj()).collect();
    let mut p: Vec<C64> = convolve(q, &rev).into_iter().map(|c| -c).collect();
    p[d] += 1.0;
    // The product is self-reciprocal; restore that exactly after rounding.
    for s in 0..=d {
        let m = 0.5 * (p[d + s] + p[d - s].conj());
        p[d + s] = m;
        p[d - s] = m.conj();
    }
    if q.iter().all(|c| c.im == 0.0) {
        for x in p.iter_mut() {
            x.im = 0.0;
        }
    }
    p
}

/// Roots of `1 - bb*` (as the polynomial `z^d (1 - bb*)`).
pub fn roots_of_complement(b: &LaurentPoly) -> Result<Vec<C64>> {
    if b.len() <= 1 {
        return Ok(Vec::new());
    }
    poly_roots(&one_minus_bbstar(b.coeffs()))
}

fn check_admissible(b: &LaurentPoly) -> Result<()> {
    let m = (ETA_GRID_FACTOR * b.len()).max(64);
    let sup = b.eval_circle(m).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let min = 1.0 - sup * sup;
    if min < -ADMISSIBILITY_SLACK || !min.is_finite() {
        return Err(NlftError::NotAdmissible { min });
    }
    Ok(())
}

/// Coefficients `c_0..c_d` of `a* = lambda prod (1 - z/alpha) prod (z - beta) prod (1 - z/tau)`
/// for roots `alpha` outside, `beta` inside and `tau` on the circle, with
/// `lambda` fixed by `a*(0) > 0` and `sum |c_j|^2 = norm_sq`.
///
/// The product is formed pointwise on a roots-of-unity grid through a sum of
/// logarithms and converted back with one FFT, which stays accurate at
/// degrees where expanding the product coefficient by coefficient would not.
pub fn a_star_from_roots(outside: &[C64], inside: &[C64], circle: &[C64], norm_sq: f64) -> Vec<C64> {
    let d = outside.len() + inside.len() + circle.len();
    if d == 0 {
        return vec![C64::new(norm_sq.max(0.0).sqrt(), 0.0)];
    }
    let m = (2 * (d + 1)).next_power_of_two().max(16);
    let mut logs = vec![ZERO; m];
    let mut direct = vec![C64::new(1.0, 0.0); m];
    for (j, (lg, dv)) in logs.iter_mut().zip(direct.iter_mut()).enumerate() {
        let z = C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        let mut s = ZERO;
        for &a in outside {
            s += (1.0 - z / a).ln();
        }
        for &b in inside {
            s += (1.0 - b / z).ln();
        }
        *lg = s;
        let mut p = z.powi(inside.len() as i32);
        for &t in circle {
            p *= 1.0 - z / t;
        }
        *dv = p;
    }
    let shift = logs.iter().map(|s| s.re).fold(f64::NEG_INFINITY, f64::max);
    let vals: Vec<C64> = logs.iter().zip(&direct).map(|(s, p)| (s - shift).exp() * p).collect();
    let mut c = coeffs_from_circle(&vals);
    c.truncate(d + 1);
    let c0 = c[0];
    let phase = if c0.norm() > 0.0 { c0.conj() / c0.norm() } else { C64::new(1.0, 0.0) };
    let norm: f64 = c.iter().map(|x| x.norm_sqr()).sum();
    let lambda = phase * (norm_sq / norm).sqrt();
    for x in c.iter_mut() {
        *x *= lambda;
    }
    c[0].im = 0.0;
    c
}

fn is_real(p: &LaurentPoly) -> bool {
    p.coeffs().iter().all(|c| c.im == 0.0)
}

fn pair_from_a_star(mut a_star: Vec<C64>, b: &LaurentPoly) -> NlftPair {
    if is_real(b) {
        for x in a_star.iter_mut() {
            x.im = 0.0;
        }
    }
    NlftPair::new(LaurentPoly::new(0, a_star).star(), b.clone())
}

/// Match each root outside the disk with a partner inside it.
fn pair_off_circle(outside: &[C64], inside: &[C64]) -> Result<()> {
    if outside.len() != inside.len() {
        return Err(NlftError::RootPairing(format!(
            "{} roots outside the disk but {} inside",
            outside.len(),
            inside.len()
        )));
    }
    let mut used = vec![false; inside.len()];
    for &a in outside {
        let best = inside
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, b)| (i, (a * b.conj() - 1.0).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((i, err)) if err <= ROOT_PAIR_TOL => used[i] = true,
            _ => return Err(NlftError::RootPairing(format!("no reflection partner for root {a}"))),
        }
    }
    Ok(())
}

/// Halve a list of roots on the circle by matching nearest neighbours.
fn halve_circle_roots(circle: &[C64]) -> Result<Vec<C64>> {
    if circle.len() % 2 == 1 {
        return Err(NlftError::RootPairing(format!("{} roots on the unit circle (odd)", circle.len())));
    }
    let mut left: Vec<C64> = circle.to_vec();
    let mut reps = Vec::with_capacity(circle.len() / 2);
    while let Some(a) = left.pop() {
        let (i, dist) = left
            .iter()
            .enumerate()
            .map(|(i, b)| (i, (a - b).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if dist > 1e-3 {
            return Err(NlftError::RootPairing(format!("root {a} on the unit circle has no double")));
        }
        let b = left.swap_remove(i);
        let mid = a + b;
        reps.push(mid / mid.norm());
    }
    Ok(reps)
}

/// The complement `a` of `b` with `a*` outer.
pub fn complete_b_outer(b: &LaurentPoly) -> Result<NlftPair> {
    if b.is_zero() {
        return Ok(NlftPair::new(LaurentPoly::one(), LaurentPoly::zero()));
    }
    check_admissible(b)?;
    let norm_sq = 1.0 - b.norm_sqr();
    if b.len() == 1 {
        if norm_sq <= 0.0 {
            return Err(NlftError::NotAdmissible { min: norm_sq });
        }
        return Ok(pair_from_a_star(vec![C64::new(norm_sq.sqrt(), 0.0)], b));
    }
    let roots = roots_of_complement(b)?;
    let (mut outside, mut inside, mut circle) = (Vec::new(), Vec::new(), Vec::new());
    for r in roots {
        if on_circle(r) {
            circle.push(r / r.norm());
        } else if r.norm() > 1.0 {
            outside.push(r);
        } else {
            inside.push(r);
        }
    }
    pair_off_circle(&outside, &inside)?;
    let reps = halve_circle_roots(&circle)?;
    Ok(pair_from_a_star(a_star_from_roots(&outside, &[], &reps, norm_sq), b))
}

/// Every complement of `b` (degree at most the enumeration cap).
pub fn enumerate_complements(b: &LaurentPoly) -> Result<Vec<NlftPair>> {
    if b.is_zero() {
        return Ok(vec![NlftPair::new(LaurentPoly::one(), LaurentPoly::zero())]);
    }
    let degree = b.len() - 1;
    if degree > ENUMERATE_DEGREE_CAP {
        return Err(NlftError::DegreeCap { degree, cap: ENUMERATE_DEGREE_CAP });
    }
    check_admissible(b)?;
    let norm_sq = 1.0 - b.norm_sqr();
    if degree == 0 {
        return Ok(vec![complete_b_outer(b)?]);
    }
    let roots = roots_of_complement(b)?;
    let rs = RootMultiset::from_values(&roots)?;

    // Per class: the roots every complement shares on the circle, or the
    // list of (outside, inside) selections.
    let mut circle_reps: Vec<C64> = Vec::new();
    let mut choices: Vec<Vec<(Vec<C64>, Vec<C64>)>> = Vec::new();
    for class in rs.classes() {
        let members: Vec<C64> =
            class.iter().flat_map(|&i| std::iter::repeat_n(rs.roots[i], rs.mult[i])).collect();
        if members.len() % 2 == 1 {
            return Err(NlftError::RootPairing("root class of odd size".into()));
        }
        if members.iter().any(|r| on_circle(*r)) {
            let mean: C64 = members.iter().map(|r| r / r.norm()).sum();
            let rep = mean / mean.norm();
            circle_reps.extend(std::iter::repeat_n(rep, members.len() / 2));
            continue;
        }
        let out: Vec<C64> = members.iter().copied().filter(|r| r.norm() > 1.0).collect();
        let inn: Vec<C64> = members.iter().copied().filter(|r| r.norm() < 1.0).collect();
        if out.len() != inn.len() {
            return Err(NlftError::RootPairing("unbalanced root class".into()));
        }
        let k = out.len();
        choices.push((0..=k).rev().map(|i| (out[..i].to_vec(), inn[..k - i].to_vec())).collect());
    }

    let mut result = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut outside = Vec::new();
        let mut inside = Vec::new();
        for (c, &i) in choices.iter().zip(&idx) {
            outside.extend_from_slice(&c[i].0);
            inside.extend_from_slice(&c[i].1);
        }
        result.push(pair_from_a_star(a_star_from_roots(&outside, &inside, &circle_reps, norm_sq), b));
        // Odometer over the selections.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(result);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Root-location class of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterClass {
    /// No zeros in the closed unit disk.
    OuterClosedDisk,
    /// No zeros in the open unit disk.
    Outer,
    NotOuter,
}

impl OuterClass {
    pub fn is_outer(self) -> bool {
        self != OuterClass::NotOuter
    }

    pub fn is_closed_disk(self) -> bool {
        self == OuterClass::OuterClosedDisk
    }
}

/// Classify `p` by root moduli: all beyond `1 + margin`, all beyond
/// `1 - margin`, or neither. Large degrees use the argument principle.
pub fn is_outer_poly(p: &LaurentPoly, margin: f64) -> Result<OuterClass> {
    if p.is_zero() {
        return Ok(OuterClass::NotOuter);
    }
    if p.low_deg() < 0 {
        return Err(NlftError::InvalidInput("outerness is defined for polynomials only".into()));
    }
    if p.low_deg() > 0 {
        return Ok(OuterClass::NotOuter);
    }
    let c = p.coeffs();
    if c.len() - 1 > OUTER_ROOT_DEGREE_CAP {
        match zeros_inside(c, 1.0 + margin) {
            Some(0) => return Ok(OuterClass::OuterClosedDisk),
            Some(_) => match zeros_inside(c, 1.0 - margin) {
                Some(0) => return Ok(OuterClass::Outer),
                Some(_) => return Ok(OuterClass::NotOuter),
                None => {}
            },
            None => {}
        }
    }
    let roots = poly_roots(c)?;
    let min = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    Ok(if min > 1.0 + margin {
        OuterClass::OuterClosedDisk
    } else if min >= 1.0 - margin {
        OuterClass::Outer
    } else {
        OuterClass::NotOuter
    })
}

/// `a*` of a pair as a polynomial.
pub fn a_star_poly(p: &NlftPair) -> LaurentPoly {
    p.a.star()
}

/// Reflect every root of `a*` into the disk: `a_no = omega z^{-d} a*`.
pub fn flip_to_antiouter(p: &NlftPair) -> Result<NlftPair> {
    if !is_real(&p.b) {
        return Err(NlftError::InvalidInput("the flip is defined for real-coefficient b only".into()));
    }
    if p.a.is_zero() || p.a.high_deg() > 0 {
        return Err(NlftError::InvalidInput("a must have highest degree 0".into()));
    }
    let d = -p.a.low_deg();
    let flipped = p.a.star().shift(-d);
    let top = flipped.coeff(0).conj().re;
    if top == 0.0 || !top.is_finite() {
        return Err(NlftError::Precondition("leading coefficient of a* vanishes".into()));
    }
    let omega = top.signum();
    Ok(NlftPair::new(flipped.scale(C64::new(omega, 0.0)), p.b.clone()))
}
