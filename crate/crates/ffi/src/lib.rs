//! C ABI over the modunit workbench.
//!
//! Objects cross the boundary as opaque handles created by `mu_*_new` or a
//! computing function and released with the matching `mu_*_free`. Every
//! fallible call returns a [`MuStatus`]; the message of the most recent
//! failure on the calling thread is available from [`mu_last_error`].
//! Text is written snprintf-style: the return value is the full length
//! without the terminating NUL, and at most `cap − 1` bytes are copied.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modunit::arith::{bernoulli_exponent, divisibility_survey};
use modunit::exact::quad::rat_to_f64;
use modunit::exact::{fmt_rat, IPoly};
use modunit::galois::quadratic_subfield_test;
use modunit::param::builtin_registry;
use modunit::units::{
    derived_units, f_chi_breve_series, f_chi_series, resolve_unit_sign, t_series, verify_heegner_vanishing, SeriesData,
};
use modunit::zeros::plus_zero_locus;
use modunit::Error;
use num_traits::ToPrimitive;

/// Result codes. 1–3 agree with the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuStatus {
    Ok = 0,
    /// An identity or invariant of the computation failed.
    VerificationFailed = 1,
    BadInput = 2,
    PrecisionTooLow = 3,
    NullPointer = 4,
    /// The library panicked; the handle arguments are left untouched.
    Internal = 5,
}

/// Which q-series [`mu_series_new`] computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSeriesKind {
    FChi = 0,
    FChiBreve = 1,
    GChi = 2,
    GChiBreve = 3,
    HChi = 4,
    T = 5,
}

/// Opaque truncated Laurent series.
pub struct MuSeries {
    data: SeriesData,
}

/// Opaque integer polynomial.
pub struct MuPoly {
    poly: IPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> MuStatus {
    match e.exit_code() {
        1 => MuStatus::VerificationFailed,
        3 => MuStatus::PrecisionTooLow,
        _ => MuStatus::BadInput,
    }
}

/// Runs `f`, mapping library errors and panics onto status codes.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> MuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MuStatus::Ok,
        Ok(Err(e)) => {
            set_error(format!("{}: {e}", e.tag()));
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            MuStatus::Internal
        }
    }
}

unsafe fn write_text(text: &str, buf: *mut c_char, cap: usize) -> usize {
    if !buf.is_null() && cap > 0 {
        let n = text.len().min(cap - 1);
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, n);
        *buf.add(n) = 0;
    }
    text.len()
}

fn null_error() -> MuStatus {
    set_error("null pointer argument".into());
    MuStatus::NullPointer
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mu_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| write_text(&e.borrow(), buf, cap))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// v_χ as the fraction num/den.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mu_bernoulli_exponent(level: u64, num: *mut i64, den: *mut i64) -> MuStatus {
    if num.is_null() || den.is_null() {
        return null_error();
    }
    guard(|| {
        let v = bernoulli_exponent(level)?;
        let too_big = || Error::BadInput("exponent exceeds 64 bits".into());
        *num = v.numer().to_i64().ok_or_else(too_big)?;
        *den = v.denom().to_i64().ok_or_else(too_big)?;
        Ok(())
    })
}

/// Writes up to `cap` levels of the divisibility survey to `levels` and
/// their count to `len`; the count may exceed `cap`.
///
/// # Safety
/// `levels` must be null or valid for `cap` writes; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mu_survey(max_level: u64, levels: *mut u64, cap: usize, len: *mut usize) -> MuStatus {
    if len.is_null() {
        return null_error();
    }
    guard(|| {
        let rows = divisibility_survey(max_level);
        if !levels.is_null() {
            for (i, (n, _, _)) in rows.iter().take(cap).enumerate() {
                *levels.add(i) = *n;
            }
        }
        *len = rows.len();
        Ok(())
    })
}

/// Computes a unit or t through q^(precision − 1).
///
/// # Safety
/// `out` must be valid for writes. On success `*out` owns a handle that
/// must be released with [`mu_series_free`].
#[no_mangle]
pub unsafe extern "C" fn mu_series_new(
    level: u64,
    kind: MuSeriesKind,
    precision: i64,
    out: *mut *mut MuSeries,
) -> MuStatus {
    if out.is_null() {
        return null_error();
    }
    guard(|| {
        let data = match kind {
            MuSeriesKind::FChi => f_chi_series(level, precision, resolve_unit_sign(level)?)?.series,
            MuSeriesKind::FChiBreve => f_chi_breve_series(level, precision)?.series,
            MuSeriesKind::T => t_series(level, precision)?.series,
            MuSeriesKind::GChi | MuSeriesKind::GChiBreve | MuSeriesKind::HChi => {
                let d = derived_units(level, precision)?;
                let s = match kind {
                    MuSeriesKind::GChi => d.g_chi,
                    MuSeriesKind::HChi => d.h_chi,
                    _ => Some(d.g_chi_breve),
                };
                SeriesData::Rat(s.ok_or(Error::BadLevel(level))?)
            }
        };
        *out = Box::into_raw(Box::new(MuSeries { data }));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`mu_series_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mu_series_free(s: *mut MuSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn mu_series_valuation(s: *const MuSeries) -> i64 {
    s.as_ref().map_or(0, |s| s.data.valuation())
}

/// Exponent of the O(q^k) error term.
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn mu_series_precision(s: *const MuSeries) -> i64 {
    s.as_ref().map_or(0, |s| s.data.precision())
}

fn coeff_text(data: &SeriesData, k: i64) -> String {
    match data {
        SeriesData::Int(s) => s.coeff(k).to_string(),
        SeriesData::Rat(s) => fmt_rat(&s.coeff(k)),
        SeriesData::Quad(s) => s.coeff(k).to_string(),
    }
}

/// Coefficient of q^k as exact text: an integer, `a/b`, or `a+b*sqrt(N)`.
///
/// # Safety
/// `s` must be a live series handle and `buf` null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mu_series_coeff(s: *const MuSeries, k: i64, buf: *mut c_char, cap: usize) -> usize {
    match s.as_ref() {
        Some(s) => write_text(&coeff_text(&s.data, k), buf, cap),
        None => 0,
    }
}

/// Coefficient of q^k rounded to a double (real embedding √N > 0).
///
/// # Safety
/// `s` must be a live series handle.
#[no_mangle]
pub unsafe extern "C" fn mu_series_coeff_f64(s: *const MuSeries, k: i64) -> f64 {
    match s.as_ref().map(|s| &s.data) {
        Some(SeriesData::Int(s)) => s.coeff(k).to_f64().unwrap_or(f64::NAN),
        Some(SeriesData::Rat(s)) => rat_to_f64(&s.coeff(k)),
        Some(SeriesData::Quad(s)) => s.coeff(k).to_f64(),
        None => f64::NAN,
    }
}

/// Polynomial from `len` coefficients, highest degree first.
///
/// # Safety
/// `coeffs` must be valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn mu_poly_new(coeffs: *const i64, len: usize, out: *mut *mut MuPoly) -> MuStatus {
    if coeffs.is_null() || out.is_null() {
        return null_error();
    }
    guard(|| {
        let desc = std::slice::from_raw_parts(coeffs, len);
        *out = Box::into_raw(Box::new(MuPoly { poly: IPoly::from_i64(desc) }));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a polynomial handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mu_poly_free(p: *mut MuPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or −1 for the zero polynomial or a null handle.
///
/// # Safety
/// `p` must be a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn mu_poly_degree(p: *const MuPoly) -> i64 {
    p.as_ref().and_then(|p| p.poly.degree()).map_or(-1, |d| d as i64)
}

/// Coefficient of T^k as decimal text.
///
/// # Safety
/// `p` must be a live polynomial handle and `buf` null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mu_poly_coeff(p: *const MuPoly, k: usize, buf: *mut c_char, cap: usize) -> usize {
    match p.as_ref() {
        Some(p) => write_text(&p.poly.coeff(k).to_string(), buf, cap),
        None => 0,
    }
}

/// The polynomial in conventional notation with variable `var`.
///
/// # Safety
/// `p` must be a live handle, `var` a NUL-terminated string, and `buf` null
/// or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mu_poly_format(p: *const MuPoly, var: *const c_char, buf: *mut c_char, cap: usize) -> usize {
    let (Some(p), false) = (p.as_ref(), var.is_null()) else { return 0 };
    let var = CStr::from_ptr(var).to_string_lossy();
    write_text(&p.poly.pretty(&var), buf, cap)
}

/// The nontrivial zero-orbit polynomial p_N of h_χ on X_0^+(N), in the X
/// coordinate (`y_side` = 0) or the Y coordinate.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mu_zero_orbit(level: u64, y_side: i32, out: *mut *mut MuPoly) -> MuStatus {
    if out.is_null() {
        return null_error();
    }
    guard(|| {
        let (_, r) = plus_zero_locus(level, &builtin_registry())?;
        let poly = if y_side == 0 { r.p_n } else { r.p_n_y };
        *out = Box::into_raw(Box::new(MuPoly { poly }));
        Ok(())
    })
}

/// Sets `*splits` to 1 iff `p` splits over ℚ(√d) into two conjugate
/// factors of half degree, else 0.
///
/// # Safety
/// `p` must be a live handle and `splits` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mu_quadratic_subfield(p: *const MuPoly, d: u64, splits: *mut i32) -> MuStatus {
    let (Some(p), false) = (p.as_ref(), splits.is_null()) else { return null_error() };
    guard(|| {
        *splits = i32::from(quadratic_subfield_test(&p.poly, d)?);
        Ok(())
    })
}

/// Largest of |h_χ(τ)| and |f̆_χ(τ)² + 1| at the Heegner point of
/// discriminant −4.
///
/// # Safety
/// `residual` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mu_heegner_residual(level: u64, residual: *mut f64) -> MuStatus {
    if residual.is_null() {
        return null_error();
    }
    guard(|| {
        *residual = verify_heegner_vanishing(level)?.max();
        Ok(())
    })
}
