use std::f64::consts::PI;

use nlfft::qsp::{
    chebyshev_eval, chebyshev_grid, chebyshev_to_b, gqsp_evaluate, qsp_matrix, solve_gqsp, solve_qsp, TargetPoly,
};
use nlfft::sampling::{random_complex, random_real, rng};
use nlfft::{forward_nlft_fast, inlfft, layer_strip_general, ComplexSequence, Complex64 as C64};
use proptest::prelude::*;

type M2 = [[C64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn diag(x: C64, y: C64) -> M2 {
    [[x, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), y]]
}

/// Scale `cheb` so the grid maximum of the series is `sup`.
fn scaled(mut cheb: Vec<f64>, sup: f64) -> Vec<f64> {
    let m = chebyshev_grid(4 * cheb.len() + 16).iter().map(|&x| chebyshev_eval(&cheb, x).abs()).fold(0.0, f64::max);
    cheb.iter_mut().for_each(|c| *c *= sup / m);
    cheb
}

/// Chebyshev series of parity `n mod 2` and degree `n`.
fn parity_target(n: usize, seed: u64) -> Vec<f64> {
    let raw = random_real(&mut rng(seed), n + 1, 1.0);
    let cheb: Vec<f64> = raw.iter().enumerate().map(|(k, &c)| if (n - k) & 1 == 0 { c } else { 0.0 }).collect();
    scaled(cheb, 0.8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugation_identity(psi in prop::collection::vec(-1.5f64..1.5, 1..9)) {
        let n = psi.len() - 1;
        let i = C64::new(0.0, 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h: M2 = [[C64::new(r, 0.0), C64::new(r, 0.0)], [C64::new(r, 0.0), C64::new(-r, 0.0)]];
        let gamma = ComplexSequence::new(0, psi.iter().map(|p| C64::new(p.tan(), 0.0)).collect());
        let pair = forward_nlft_fast(&gamma);
        for j in 0..64 {
            let theta = PI * (j as f64 + 0.5) / 64.0;
            let u = qsp_matrix(&psi, theta.cos());
            let lhs = mul(&mul(&mul(&mul(&diag(C64::new(1.0, 0.0), i), &h), &u), &h), &diag(C64::new(1.0, 0.0), -i));
            let z = C64::from_polar(1.0, 2.0 * theta);
            let (a, b) = (pair.a.eval(z), pair.b.eval(z));
            let m: M2 = [[a, b], [-b.conj(), a.conj()]];
            let e = C64::from_polar(1.0, n as f64 * theta);
            let rhs = mul(&m, &diag(e, e.conj()));
            for p in 0..2 {
                for q in 0..2 {
                    prop_assert!((lhs[p][q] - rhs[p][q]).norm() <= 1e-10, "theta={theta} entry ({p},{q})");
                }
            }
        }
    }
}

#[test]
fn qsp_end_to_end() {
    for (n, seed) in [(1usize, 1u64), (2, 2), (7, 3), (32, 4), (101, 5)] {
        let cheb = parity_target(n, seed);
        let ph = solve_qsp(&TargetPoly::qsp(cheb.clone())).unwrap();
        assert_eq!(ph.psi.len(), n + 1);
        assert!(ph.residual <= 1e-7, "n={n}: {}", ph.residual);
    }
}

#[test]
fn gqsp_end_to_end() {
    for (n, seed) in [(1usize, 1u64), (5, 2), (40, 3)] {
        let c = random_complex(&mut rng(seed), n + 1, 1.0);
        let m = (0..256)
            .map(|j| {
                let z = C64::from_polar(1.0, 2.0 * PI * j as f64 / 256.0);
                c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * z + x).norm()
            })
            .fold(0.0, f64::max);
        let q: Vec<C64> = c.iter().map(|x| x * (0.8 / m)).collect();
        let ph = solve_gqsp(&TargetPoly::gqsp(&q)).unwrap();
        assert!(ph.residual <= 1e-7, "n={n}");
        // independent check at off-grid points
        let zs: Vec<C64> = (0..17).map(|j| C64::from_polar(1.0, 0.37 + j as f64)).collect();
        let vals = gqsp_evaluate(&ph, &zs).unwrap();
        for (z, v) in zs.iter().zip(&vals) {
            let want = q.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * z + x);
            assert!((v - want).norm() <= 1e-7);
        }
    }
}

#[test]
fn real_b_gives_real_gamma() {
    let cheb = parity_target(24, 9);
    let b = chebyshev_to_b(&TargetPoly::qsp(cheb), 24).unwrap();
    let p = nlfft::complement::complete_b_outer(&b).unwrap();
    let (a, bv) = p.strip_vectors();
    let g1 = layer_strip_general(&a, &bv, a.len()).unwrap();
    let (g2, _) = inlfft(&a, &bv).unwrap();
    for x in g1.values().iter().chain(g2.values()) {
        assert!(x.im.abs() <= 1e-9);
    }
}

#[test]
fn worked_gqsp_case() {
    let ph = solve_gqsp(&TargetPoly::gqsp(&[C64::new(0.0, 0.0), C64::new(0.5, 0.0)])).unwrap();
    assert!(ph.psi[0].abs() <= 1e-12 && (ph.psi[1] - PI / 6.0).abs() <= 1e-12);
    assert!(ph.phi.unwrap().iter().all(|x| x.abs() <= 1e-12));
}
