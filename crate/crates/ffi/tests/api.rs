use std::ffi::CStr;
use std::ptr;

use nlfft_ffi::*;

fn c(re: f64, im: f64) -> NlfftComplex {
    NlfftComplex { re, im }
}

fn last_error() -> String {
    let p = nlfft_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn values(seq: *const NlfftSequence) -> Vec<NlfftComplex> {
    let n = nlfft_sequence_len(seq);
    let mut buf = vec![c(0.0, 0.0); n];
    assert_eq!(nlfft_sequence_copy_values(seq, buf.as_mut_ptr(), n), NlfftStatus::Ok);
    buf
}

#[test]
fn forward_then_invert() {
    let g = [c(0.3, 0.1), c(-0.2, 0.0), c(0.1, 0.2), c(0.05, -0.1)];
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(nlfft_sequence_new(0, g.as_ptr(), g.len(), &mut seq), NlfftStatus::Ok);
        for fm in [NlfftForwardMethod::Naive, NlfftForwardMethod::Fast] {
            let mut pair = ptr::null_mut();
            assert_eq!(nlfft_forward(seq, fm, &mut pair), NlfftStatus::Ok);
            for im in [NlfftInvertMethod::Layer, NlfftInvertMethod::Fast] {
                let mut back = ptr::null_mut();
                assert_eq!(nlfft_invert(pair, im, &mut back), NlfftStatus::Ok);
                assert_eq!(nlfft_sequence_offset(back), 0);
                for (x, y) in values(back).iter().zip(&g) {
                    assert!((x.re - y.re).abs() < 1e-13 && (x.im - y.im).abs() < 1e-13);
                }
                nlfft_sequence_free(back);
            }
            nlfft_pair_free(pair);
        }
        nlfft_sequence_free(seq);
    }
}

#[test]
fn pair_accessors_and_completion() {
    let b = [c(0.3, 0.0), c(0.2, 0.0)];
    unsafe {
        let mut pair = ptr::null_mut();
        assert_eq!(nlfft_complete_outer(0, b.as_ptr(), 2, &mut pair), NlfftStatus::Ok);
        let (mut low, mut len) = (0i64, 0usize);
        assert_eq!(nlfft_pair_shape(pair, 0, &mut low, &mut len), NlfftStatus::Ok);
        assert_eq!((low, len), (-1, 2));
        let mut a = vec![c(0.0, 0.0); len];
        assert_eq!(nlfft_pair_copy_coeffs(pair, 0, a.as_mut_ptr(), len), NlfftStatus::Ok);
        // |a|^2 + |b|^2 = 1 coefficientwise in the l2 sense.
        let norm: f64 = a.iter().chain(&b).map(|z| z.re * z.re + z.im * z.im).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        let mut small = [c(0.0, 0.0); 1];
        assert_eq!(nlfft_pair_copy_coeffs(pair, 1, small.as_mut_ptr(), 1), NlfftStatus::BufferTooSmall);
        assert!(last_error().contains("need 2"));
        nlfft_pair_free(pair);
    }
}

#[test]
fn phase_solvers() {
    let q = [c(0.0, 0.0), c(0.5, 0.0)];
    let (mut psi, mut phi, mut res) = ([0.0; 2], [0.0; 2], -1.0);
    unsafe {
        let s = nlfft_gqsp_solve(q.as_ptr(), 2, psi.as_mut_ptr(), phi.as_mut_ptr(), 2, &mut res);
        assert_eq!(s, NlfftStatus::Ok);
    }
    assert!(psi[0].abs() < 1e-12 && (psi[1] - std::f64::consts::PI / 6.0).abs() < 1e-12);
    assert!(phi.iter().all(|x| x.abs() < 1e-12));
    assert!(res < 1e-12);

    // f = 0.5 T_1
    let cheb = [0.0, 0.5];
    let mut psi = [0.0; 2];
    unsafe {
        assert_eq!(nlfft_qsp_solve(cheb.as_ptr(), 2, psi.as_mut_ptr(), 2, &mut res), NlfftStatus::Ok);
    }
    assert!(res < 1e-12, "{res}");
}

#[test]
fn errors_are_reported() {
    unsafe {
        assert_eq!(nlfft_sequence_new(0, ptr::null(), 3, &mut ptr::null_mut()), NlfftStatus::NullPointer);
        assert!(last_error().contains("values"));
        let mut out = ptr::null_mut();
        assert_eq!(nlfft_invert(ptr::null(), NlfftInvertMethod::Layer, &mut out), NlfftStatus::NullPointer);

        // 1 - |b|^2 vanishes on the circle.
        let b = [c(1.0, 0.0), c(0.5, 0.0)];
        let mut pair = ptr::null_mut();
        assert_eq!(nlfft_complete_outer(0, b.as_ptr(), 2, &mut pair), NlfftStatus::InvalidInput);
        assert!(pair.is_null());

        // a*(0) < 0 stops layer stripping.
        let (a, b) = ([c(-0.6, 0.0)], [c(0.8, 0.0)]);
        assert_eq!(nlfft_pair_new(0, a.as_ptr(), 1, 0, b.as_ptr(), 1, &mut pair), NlfftStatus::Ok);
        assert_eq!(nlfft_invert(pair, NlfftInvertMethod::Layer, &mut out), NlfftStatus::NumericalFailure);
        assert!(!last_error().is_empty());
        nlfft_pair_free(pair);

        // success clears the message
        let g = [c(0.1, 0.0)];
        let mut seq = ptr::null_mut();
        assert_eq!(nlfft_sequence_new(0, g.as_ptr(), 1, &mut seq), NlfftStatus::Ok);
        assert!(nlfft_last_error_message().is_null());
        nlfft_sequence_free(seq);
        nlfft_sequence_free(ptr::null_mut());
        assert_eq!(nlfft_sequence_len(ptr::null()), 0);
    }
}
