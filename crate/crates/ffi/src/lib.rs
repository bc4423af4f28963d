//! C ABI over `nlfft`.
//!
//! Objects cross the boundary as opaque handles (`NlfftSequence`,
//! `NlfftPair`) created and released by this library. Every fallible call
//! returns an `NlfftStatus`; on failure `nlfft_last_error_message` describes
//! the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use nlfft::complement::complete_b_outer;
use nlfft::qsp::{solve_gqsp, solve_qsp, TargetPoly};
use nlfft::{
    forward_nlft_fast, forward_nlft_naive, inlfft_pair, layer_strip, ComplexSequence, LaurentPoly, NlftError,
    NlftPair,
};
use num_complex::Complex64;

/// Result code of every fallible call. The nonzero values match the exit
/// codes of the command line tool where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlfftStatus {
    Ok = 0,
    InvalidInput = 2,
    NumericalFailure = 3,
    Io = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlfftForwardMethod {
    Naive = 0,
    Fast = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlfftInvertMethod {
    Layer = 0,
    Fast = 1,
}

/// Complex number laid out as two doubles.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NlfftComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for NlfftComplex {
    fn from(z: Complex64) -> Self {
        NlfftComplex { re: z.re, im: z.im }
    }
}

impl From<NlfftComplex> for Complex64 {
    fn from(z: NlfftComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque finite sequence `gamma`.
pub struct NlfftSequence {
    inner: ComplexSequence,
}

/// Opaque pair `(a, b)` of Laurent polynomials.
pub struct NlfftPair {
    inner: NlftPair,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &NlftError) -> NlfftStatus {
    match e.exit_code() {
        3 => NlfftStatus::NumericalFailure,
        4 => NlfftStatus::Io,
        _ => NlfftStatus::InvalidInput,
    }
}

fn fail(status: NlfftStatus, msg: &str) -> NlfftStatus {
    set_error(msg);
    status
}

/// Runs `f`, recording errors and converting panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), (NlfftStatus, String)>) -> NlfftStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NlfftStatus::Ok,
        Ok(Err((s, msg))) => fail(s, &msg),
        Err(_) => fail(NlfftStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: NlftError) -> (NlfftStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (NlfftStatus, String) {
    (NlfftStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `data` must be null only when `len == 0`, else point to `len` readable items.
unsafe fn read_slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], (NlfftStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null_err(what));
    }
    Ok(slice::from_raw_parts(data, len))
}

/// # Safety
/// `out` must be null or point to `cap` writable items.
unsafe fn write_slice<T: Copy>(src: &[T], out: *mut T, cap: usize) -> Result<(), (NlfftStatus, String)> {
    if src.len() > cap {
        return Err((NlfftStatus::BufferTooSmall, format!("need {} entries, buffer holds {cap}", src.len())));
    }
    if src.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(null_err("output buffer"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

fn to_c(v: &[Complex64]) -> Vec<NlfftComplex> {
    v.iter().map(|&z| z.into()).collect()
}

fn from_c(v: &[NlfftComplex]) -> Vec<Complex64> {
    v.iter().map(|&z| z.into()).collect()
}

/// Message of the last failed call on this thread, or null. The string is
/// owned by the library and stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn nlfft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Create a sequence `gamma_offset, ..., gamma_{offset+len-1}`.
///
/// # Safety
/// `values` must point to `len` readable entries (or be null with `len == 0`)
/// and `out` must be a valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_sequence_new(
    offset: i64,
    values: *const NlfftComplex,
    len: usize,
    out: *mut *mut NlfftSequence,
) -> NlfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = from_c(read_slice(values, len, "values")?);
        *out = Box::into_raw(Box::new(NlfftSequence { inner: ComplexSequence::new(offset, v) }));
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nlfft_sequence_free(seq: *mut NlfftSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Number of entries, 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_sequence_len(seq: *const NlfftSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.inner.len())
}

/// Index of the first entry, 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_sequence_offset(seq: *const NlfftSequence) -> i64 {
    seq.as_ref().map_or(0, |s| s.inner.support_offset())
}

/// Copy the entries into `buf`, which holds `cap` items.
///
/// # Safety
/// `seq` must be a live handle and `buf` must hold `cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn nlfft_sequence_copy_values(
    seq: *const NlfftSequence,
    buf: *mut NlfftComplex,
    cap: usize,
) -> NlfftStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(|| null_err("seq"))?;
        write_slice(&to_c(s.inner.values()), buf, cap)
    })
}

/// Create the pair with `a = sum a_coeffs[j] z^{a_low + j}` and likewise for `b`.
///
/// # Safety
/// Coefficient pointers must hold the stated number of entries and `out`
/// must be a valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_pair_new(
    a_low: i64,
    a_coeffs: *const NlfftComplex,
    a_len: usize,
    b_low: i64,
    b_coeffs: *const NlfftComplex,
    b_len: usize,
    out: *mut *mut NlfftPair,
) -> NlfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let a = LaurentPoly::new(a_low, from_c(read_slice(a_coeffs, a_len, "a_coeffs")?));
        let b = LaurentPoly::new(b_low, from_c(read_slice(b_coeffs, b_len, "b_coeffs")?));
        *out = Box::into_raw(Box::new(NlfftPair { inner: NlftPair::new(a, b) }));
        Ok(())
    })
}

/// # Safety
/// `pair` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nlfft_pair_free(pair: *mut NlfftPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Lowest degree and number of stored coefficients of `a` (`which == 0`) or `b`.
///
/// # Safety
/// `pair` must be a live handle; `low` and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nlfft_pair_shape(
    pair: *const NlfftPair,
    which: u32,
    low: *mut i64,
    len: *mut usize,
) -> NlfftStatus {
    guard(|| {
        let p = pair.as_ref().ok_or_else(|| null_err("pair"))?;
        if low.is_null() || len.is_null() {
            return Err(null_err("low or len"));
        }
        let poly = if which == 0 { &p.inner.a } else { &p.inner.b };
        *low = poly.low_deg();
        *len = poly.len();
        Ok(())
    })
}

/// Copy the coefficients of `a` (`which == 0`) or `b` into `buf`.
///
/// # Safety
/// `pair` must be a live handle and `buf` must hold `cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn nlfft_pair_copy_coeffs(
    pair: *const NlfftPair,
    which: u32,
    buf: *mut NlfftComplex,
    cap: usize,
) -> NlfftStatus {
    guard(|| {
        let p = pair.as_ref().ok_or_else(|| null_err("pair"))?;
        let poly = if which == 0 { &p.inner.a } else { &p.inner.b };
        write_slice(&to_c(poly.coeffs()), buf, cap)
    })
}

/// Forward transform of `seq` into a new pair.
///
/// # Safety
/// `seq` must be a live handle and `out` a valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_forward(
    seq: *const NlfftSequence,
    method: NlfftForwardMethod,
    out: *mut *mut NlfftPair,
) -> NlfftStatus {
    guard(|| {
        let s = seq.as_ref().ok_or_else(|| null_err("seq"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let p = match method {
            NlfftForwardMethod::Naive => forward_nlft_naive(&s.inner),
            NlfftForwardMethod::Fast => forward_nlft_fast(&s.inner),
        };
        *out = Box::into_raw(Box::new(NlfftPair { inner: p }));
        Ok(())
    })
}

/// Inverse transform of `pair` into a new sequence.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid place to store the handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_invert(
    pair: *const NlfftPair,
    method: NlfftInvertMethod,
    out: *mut *mut NlfftSequence,
) -> NlfftStatus {
    guard(|| {
        let p = pair.as_ref().ok_or_else(|| null_err("pair"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let g = match method {
            NlfftInvertMethod::Layer => layer_strip(&p.inner),
            NlfftInvertMethod::Fast => inlfft_pair(&p.inner),
        }
        .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NlfftSequence { inner: g }));
        Ok(())
    })
}

/// Complete `b = sum b_coeffs[j] z^{b_low + j}` to the pair with outer `a*`.
///
/// # Safety
/// `b_coeffs` must hold `b_len` entries and `out` must be a valid place to
/// store the handle.
#[no_mangle]
pub unsafe extern "C" fn nlfft_complete_outer(
    b_low: i64,
    b_coeffs: *const NlfftComplex,
    b_len: usize,
    out: *mut *mut NlfftPair,
) -> NlfftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let b = LaurentPoly::new(b_low, from_c(read_slice(b_coeffs, b_len, "b_coeffs")?));
        let p = complete_b_outer(&b).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(NlfftPair { inner: p }));
        Ok(())
    })
}

/// QSP phases for the Chebyshev series `cheb[0..len]`. Writes `len` phases
/// into `psi` (capacity `cap`) and the grid residual into `residual`.
///
/// # Safety
/// `cheb` must hold `len` entries, `psi` `cap` writable entries and
/// `residual` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn nlfft_qsp_solve(
    cheb: *const f64,
    len: usize,
    psi: *mut f64,
    cap: usize,
    residual: *mut f64,
) -> NlfftStatus {
    guard(|| {
        let c = read_slice(cheb, len, "cheb")?.to_vec();
        let ph = solve_qsp(&TargetPoly::qsp(c)).map_err(lib_err)?;
        write_slice(&ph.psi, psi, cap)?;
        if let Some(r) = residual.as_mut() {
            *r = ph.residual;
        }
        Ok(())
    })
}

/// GQSP phases for `Q = sum q[j] z^j`. Writes `len` angles into each of
/// `psi` and `phi` (capacity `cap`) and the grid residual into `residual`.
///
/// # Safety
/// `q` must hold `len` entries, `psi` and `phi` `cap` writable entries each,
/// and `residual` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn nlfft_gqsp_solve(
    q: *const NlfftComplex,
    len: usize,
    psi: *mut f64,
    phi: *mut f64,
    cap: usize,
    residual: *mut f64,
) -> NlfftStatus {
    guard(|| {
        let coeffs = from_c(read_slice(q, len, "q")?);
        let ph = solve_gqsp(&TargetPoly::gqsp(&coeffs)).map_err(lib_err)?;
        write_slice(&ph.psi, psi, cap)?;
        write_slice(ph.phi.as_deref().unwrap_or(&[]), phi, cap)?;
        if let Some(r) = residual.as_mut() {
            *r = ph.residual;
        }
        Ok(())
    })
}
