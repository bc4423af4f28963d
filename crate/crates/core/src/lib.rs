//! SU(2) nonlinear Fourier transform.
//!
//! A sequence `gamma` maps to the ordered product of the matrices
//! `(1+|gamma_k|^2)^{-1/2} [[1, gamma_k z^k], [-conj(gamma_k) z^{-k}, 1]]`,
//! recorded as a pair `(a, b)` of Laurent polynomials. The crate provides the
//! forward map, two inverses (layer stripping and the inverse nonlinear FFT),
//! completion of `b` to a pair, QSP/GQSP phase factors and a set of
//! numerical diagnostics.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod complement;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod fft;
pub mod inverse;
pub mod laurent;
pub mod nlft;
pub mod qsp;
pub mod roots;
pub mod sampling;

pub use num_complex::Complex64;

pub use error::{NlftError, Result};
pub use inverse::{givens_apply, inlfft, inlfft_pair, inlfft_with, layer_strip, layer_strip_general, GivensRotor, InlfftOptions, StripState, StripStep};
pub use laurent::LaurentPoly;
pub use nlft::{
    eta_of, forward_nlft_fast, forward_nlft_naive, pair_check, shift_support, transfer_pair, ComplexSequence, NlftPair,
    PairReport, TransferPair,
};
