use nlfft::diagnostics::lipschitz::{local_lipschitz_check, lp_norm};
use nlfft::diagnostics::{
    build_strip_matrices, instability_experiment, lipschitz_checks, log_linear_slope, nonuniform_witness,
    norm_bounds_report, norm_bounds_window, theta_map_bounds, verify_l_system,
};
use nlfft::sampling::{admissible_pair, random_complex, rng};
use nlfft::{eta_of, NlftError, forward_nlft_fast, ComplexSequence, Complex64 as C64, LaurentPoly, NlftPair};
use rand::Rng;

#[test]
fn factorization_identities() {
    for seed in 0..6u64 {
        let n = [4usize, 17, 64, 130, 256, 300][seed as usize];
        let adm = admissible_pair(n, 0.2, seed % 2 == 0, &mut rng(seed)).unwrap();
        let sm = build_strip_matrices(&adm.pair).unwrap();
        assert!(sm.ldl_residual() <= 1e-10, "n={n}");
        assert!(sm.displacement_residual() <= 1e-12, "n={n}");
        assert!(verify_l_system(&adm.pair).unwrap().residual <= 1e-9, "n={n}");
    }
}

#[test]
fn norm_bounds_on_windows() {
    let adm = admissible_pair(96, 0.3, false, &mut rng(11)).unwrap();
    let r = norm_bounds_report(&adm.pair, None).unwrap();
    assert!(r.pass, "{r:?}");
    let sm = build_strip_matrices(&adm.pair).unwrap();
    let eta = eta_of(&adm.pair, None);
    let mut g = rng(12);
    for _ in 0..10 {
        let lo = g.random_range(0..90);
        let hi = g.random_range(lo + 1..=96);
        let w = norm_bounds_window(&sm, lo, hi, eta);
        assert!(w.pass, "window {lo}..{hi}: {w:?}");
    }
}

#[test]
fn norm_bounds_need_certified_input() {
    // a* = (1 + 2z)/sqrt(5)·c has a zero inside the disk
    let s = 0.5f64;
    let p = NlftPair::new(
        LaurentPoly::from_real(-1, &[2.0 * s / 5f64.sqrt(), s / 5f64.sqrt()]),
        LaurentPoly::from_real(0, &[0.0, (1.0 - s * s).sqrt()]),
    );
    assert!(matches!(norm_bounds_report(&p, None), Err(NlftError::Precondition(_))));
}

#[test]
fn lipschitz_inequality_on_random_pairs() {
    let norms = [1.0, 2.0, f64::INFINITY];
    let mut g = rng(21);
    for t in 0..40 {
        let n = 1 + t % 16;
        let a = ComplexSequence::new(0, random_complex(&mut g, n, 1.0));
        let b = ComplexSequence::new(0, random_complex(&mut g, n, 1.0));
        let pqr = (norms[t % 3], norms[(t / 3) % 3], norms[(t / 9) % 3]);
        let r = lipschitz_checks(&a, &b, pqr).unwrap();
        assert!(r.holds, "{r:?}");
    }
    assert_eq!(lp_norm(&[C64::new(3.0, 4.0)], 2.0), 5.0);
}

#[test]
fn theta_bounds() {
    let mut g = rng(4);
    for _ in 0..200 {
        let v = random_complex(&mut g, 2, 3.0);
        assert!(theta_map_bounds(v[0], v[1]).holds);
    }
}

#[test]
fn local_lipschitz_small_n() {
    for n in 1..=6usize {
        let g = ComplexSequence::new(0, random_complex(&mut rng(n as u64), n, 0.5));
        let p1 = forward_nlft_fast(&g);
        let eps = 1e-6;
        let bump = |p: &LaurentPoly| LaurentPoly::new(p.low_deg(), p.coeffs().iter().map(|c| c + eps).collect());
        let p2 = NlftPair::new(bump(&p1.a), bump(&p1.b));
        let r = local_lipschitz_check(&p1, &p2).unwrap();
        assert!(r.holds, "{r:?}");
    }
}

#[test]
fn witness_family() {
    for k in 2..=40 {
        let w = nonuniform_witness(k, 3).unwrap();
        assert!(w.holds, "{w:?}");
    }
}

#[test]
fn instability_contrast() {
    let row = instability_experiment(80, 0).unwrap();
    assert!(row.residual_outer <= 1e-8);
    assert!(row.residual_flipped >= 1e-2);
    assert!(log_linear_slope(&row.entry_error_flipped) > 0.0);
}
