use nlfft::nlft::xcorr;
use nlfft::{forward_nlft_fast, forward_nlft_naive, pair_check, ComplexSequence, Complex64 as C64, NlftPair};
use proptest::prelude::*;

fn seq(max_len: usize, bound: f64) -> impl Strategy<Value = ComplexSequence> {
    (-5i64..5, prop::collection::vec((-bound..bound, -bound..bound), 1..max_len)).prop_map(|(m, v)| {
        ComplexSequence::new(m, v.into_iter().map(|(r, i)| C64::new(r, i)).collect())
    })
}

fn a_vec(p: &NlftPair, n: usize) -> Vec<C64> {
    (0..n as i64).map(|j| p.a.coeff(-(n as i64 - 1) + j)).collect()
}

fn b_vec(p: &NlftPair, m: i64, n: usize) -> Vec<C64> {
    (0..n as i64).map(|j| p.b.coeff(m + j)).collect()
}

/// Direct product of the 2x2 factors at a point on the circle.
fn oracle_matrix(g: &ComplexSequence, z: C64) -> [[C64; 2]; 2] {
    let one = C64::new(1.0, 0.0);
    let mut m = [[one, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), one]];
    for (j, &c) in g.values().iter().enumerate() {
        let k = g.support_offset() + j as i64;
        let s = 1.0 / (1.0 + c.norm_sqr()).sqrt();
        let f = [[one * s, c * z.powi(k as i32) * s], [-c.conj() * z.powi(-k as i32) * s, one * s]];
        m = [
            [m[0][0] * f[0][0] + m[0][1] * f[1][0], m[0][0] * f[0][1] + m[0][1] * f[1][1]],
            [m[1][0] * f[0][0] + m[1][1] * f[1][0], m[1][0] * f[0][1] + m[1][1] * f[1][1]],
        ];
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn naive_output_is_a_pair(g in seq(257, 2.0)) {
        let r = pair_check(&forward_nlft_naive(&g), 1e-10);
        prop_assert!(r.pass, "{r:?}");
    }

    #[test]
    fn a_star_at_zero_is_the_product(g in seq(200, 2.0)) {
        let p = forward_nlft_naive(&g);
        let want: f64 = g.values().iter().map(|c| (1.0 + c.norm_sqr()).powf(-0.5)).product();
        prop_assert!((p.a_star_zero() - C64::new(want, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn coefficient_norm_is_one(g in seq(200, 2.0)) {
        let p = forward_nlft_fast(&g);
        let total = p.a.norm_sqr() + p.b.norm_sqr();
        prop_assert!((total - 1.0).abs() <= 1e-10, "{total}");
    }

    #[test]
    fn crosscorrelations_sum_to_impulse(g in seq(120, 1.0)) {
        let n = g.len();
        let p = forward_nlft_naive(&g);
        let a = a_vec(&p, n);
        let b = b_vec(&p, g.support_offset(), n);
        let s: Vec<C64> = xcorr(&a, &a).iter().zip(xcorr(&b, &b)).map(|(x, y)| x + y).collect();
        for (k, v) in s.iter().enumerate() {
            let want = if k == n - 1 { 1.0 } else { 0.0 };
            prop_assert!((v - C64::new(want, 0.0)).norm() <= 1e-10, "lag {k}: {v}");
        }
    }

    #[test]
    fn fast_matches_naive(g in seq(1025, 1.0)) {
        let f = forward_nlft_fast(&g);
        let s = forward_nlft_naive(&g);
        prop_assert!(f.a.max_diff(&s.a) <= 1e-10 && f.b.max_diff(&s.b) <= 1e-10);
    }

    #[test]
    fn matches_matrix_product_on_circle(g in seq(12, 1.5), t in 0.0f64..6.0) {
        let z = C64::from_polar(1.0, t);
        let p = forward_nlft_fast(&g);
        let m = oracle_matrix(&g, z);
        let (a, b) = (p.a.eval(z), p.b.eval(z));
        prop_assert!((m[0][0] - a).norm() <= 1e-12 && (m[0][1] - b).norm() <= 1e-12);
        prop_assert!((m[1][0] + b.conj()).norm() <= 1e-12 && (m[1][1] - a.conj()).norm() <= 1e-12);
    }
}

#[test]
fn empty_sequence_gives_identity() {
    let p = forward_nlft_fast(&ComplexSequence::new(3, vec![]));
    assert_eq!(p, NlftPair::identity());
}
