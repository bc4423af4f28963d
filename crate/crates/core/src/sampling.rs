//! Seeded generators for test and benchmark inputs.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complement::{is_outer_poly, OuterClass};
use crate::config::OUTER_MARGIN;
use crate::error::{NlftError, Result};
use crate::laurent::LaurentPoly;
use crate::nlft::{eta_of, forward_nlft_fast, ComplexSequence, NlftPair};

/// The single PRNG type behind every `--seed`.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in the square `[-scale, scale]^2`.
pub fn random_complex(rng: &mut SeededRng, n: usize, scale: f64) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)) * scale)
        .collect()
}

/// Entries uniform in `[-scale, scale]`.
pub fn random_real(rng: &mut SeededRng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..=1.0) * scale).collect()
}

/// A sequence together with its transform and the grid estimate of eta.
#[derive(Clone, Debug)]
pub struct Admissible {
    pub gamma: ComplexSequence,
    pub pair: NlftPair,
    pub eta: f64,
}

/// Random `gamma` of length `n`, rescaled so that the transform has
/// `eta_of` close to `eta_target`, and with `a*` certified free of zeros in
/// the closed unit disk. Redraws (at most 20 times) if certification fails.
pub fn admissible_pair(n: usize, eta_target: f64, real: bool, rng: &mut SeededRng) -> Result<Admissible> {
    if n == 0 || !(eta_target > 0.0 && eta_target < 1.0) {
        return Err(NlftError::InvalidInput("need n >= 1 and 0 < eta < 1".into()));
    }
    for _ in 0..20 {
        let dir: Vec<C64> = if real {
            random_real(rng, n, 1.0).into_iter().map(|x| C64::new(x, 0.0)).collect()
        } else {
            random_complex(rng, n, 1.0)
        };
        let build = |c: f64| {
            let g = ComplexSequence::new(0, dir.iter().map(|x| x * c).collect());
            let p = forward_nlft_fast(&g);
            let e = eta_of(&p, None);
            (g, p, e)
        };
        // eta decreases from 1 as the scale grows; bracket then bisect.
        let mut hi = 1.0 / (n as f64).sqrt();
        while build(hi).2 > eta_target && hi < 1e3 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if build(mid).2 > eta_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (gamma, pair, eta) = build(lo);
        if is_outer_poly(&pair.a.star(), OUTER_MARGIN)? == OuterClass::OuterClosedDisk {
            return Ok(Admissible { gamma, pair, eta });
        }
    }
    Err(NlftError::Precondition("no certified outer sample found".into()))
}

/// Random real polynomial of degree `n - 1` rescaled so that the maximum
/// modulus on a `4n`-point grid equals `sup`.
pub fn random_b_real(n: usize, sup: f64, rng: &mut SeededRng) -> LaurentPoly {
    loop {
        let c = random_real(rng, n, 1.0);
        if c[0] == 0.0 || c[n - 1] == 0.0 {
            continue;
        }
        let p = LaurentPoly::from_real(0, &c);
        let m = p.eval_circle(4 * n).iter().map(|v| v.norm()).fold(0.0, f64::max);
        if m > 0.0 {
            return p.scale(C64::new(sup / m, 0.0));
        }
    }
}

/// Random complex polynomial of degree `n - 1` with grid maximum `sup` on
/// a `16n`-point grid.
pub fn random_b_complex(n: usize, sup: f64, rng: &mut SeededRng) -> LaurentPoly {
    loop {
        let c = random_complex(rng, n, 1.0);
        let p = LaurentPoly::new(0, c);
        if p.len() != n {
            continue;
        }
        let m = p.eval_circle(16 * n).iter().map(|v| v.norm()).fold(0.0, f64::max);
        if m > 0.0 {
            return p.scale(C64::new(sup / m, 0.0));
        }
    }
}
