//! C ABI over `hilbert_cones`.
//!
//! Series cross the boundary as opaque [`HcSeries`] handles or as the JSON
//! wire form `{"den_exp": d, "numer": ["p/q", ...]}`. Every function returns
//! an [`HcStatus`]; on failure [`hc_last_error`] describes the problem.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hilbert_cones::betti::betti_bounds;
use hilbert_cones::cones::{membership, r_decompose, ConeId, ConeKind};
use hilbert_cones::oracle::{hf_monomial_quotient, MonomialIdeal};
use hilbert_cones::ratcalc::format_rat;
use hilbert_cones::series::apply_t;
use hilbert_cones::GenFun;

/// Result code of every `hc_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The arguments are well formed but outside the operation's domain.
    Domain = 4,
    Panic = 5,
}

/// Opaque handle to an exact generating function.
pub struct HcSeries {
    inner: GenFun,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HcStatus, String);

impl From<hilbert_cones::Error> for Failure {
    fn from(e: hilbert_cones::Error) -> Self {
        let status = match e {
            hilbert_cones::Error::Parse(_) => HcStatus::Parse,
            _ => HcStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            HcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn series_ref<'a>(p: *const HcSeries) -> Result<&'a GenFun, Failure> {
    // SAFETY: the caller passes a live handle from this library or null.
    unsafe { p.as_ref() }.map(|s| &s.inner).ok_or_else(|| null("series"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null("string argument"));
    }
    // SAFETY: non-null and NUL-terminated per the API contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| Failure(HcStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Failure(HcStatus::Domain, e.to_string()))?;
    // SAFETY: `out` is non-null and writable per the API contract.
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn write_series(out: *mut *mut HcSeries, g: GenFun) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: as above.
    unsafe { *out = Box::into_raw(Box::new(HcSeries { inner: g })) };
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next `hc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in `write_string`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parse the JSON wire form into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_series_from_json(json: *const c_char, out: *mut *mut HcSeries) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = unsafe { read_str(json) }?;
        let g: GenFun =
            serde_json::from_str(text).map_err(|e| Failure(HcStatus::Parse, e.to_string()))?;
        unsafe { write_series(out, g) }
    })
}

/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_series_to_json(series: *const HcSeries, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        unsafe { write_string(out, to_json(g)) }
    })
}

/// # Safety
/// `series` must be null or a live handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_series_free(series: *mut HcSeries) {
    if !series.is_null() {
        // SAFETY: produced by `Box::into_raw` in `write_series`.
        drop(unsafe { Box::from_raw(series) });
    }
}

/// Coefficient of `t^j` as a `"p/q"` string.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_series_coeff(series: *const HcSeries, j: usize, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        unsafe { write_string(out, format_rat(&g.coeff_at(j))) }
    })
}

/// `T[h](j) = (n+j+1) h(j) - (j+1) h(j+1)` as a new handle.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_series_apply_t(series: *const HcSeries, n: usize, out: *mut *mut HcSeries) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        unsafe { write_series(out, apply_t(g, n)) }
    })
}

/// Membership in `P(n, bound)`, `Q(n, bound)` or `R(n, bound)` for `cone`
/// one of `'P'`, `'Q'`, `'R'`. Writes 1 or 0 to `is_member` and, when
/// `certificate` is non-null, the certificate JSON.
///
/// # Safety
/// `series` must be a live handle; `is_member` must be writable;
/// `certificate` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hc_membership(
    series: *const HcSeries,
    cone: c_char,
    n: usize,
    bound: i64,
    is_member: *mut i32,
    certificate: *mut *mut c_char,
) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        if is_member.is_null() {
            return Err(null("is_member"));
        }
        let kind = match cone as u8 {
            b'P' | b'p' => ConeKind::P,
            b'Q' | b'q' => ConeKind::Q,
            b'R' | b'r' => ConeKind::R,
            other => return Err(Failure(HcStatus::Domain, format!("unknown cone code {other}"))),
        };
        let cert = membership(ConeId::new(kind, n, bound)?, g)?;
        unsafe { *is_member = i32::from(cert.member) };
        if !certificate.is_null() {
            unsafe { write_string(certificate, to_json(&cert)) }?;
        }
        Ok(())
    })
}

/// Coordinates in the extreme rays of `R(n, m)` as a JSON array of
/// `"p/q"` strings.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_r_decompose(series: *const HcSeries, n: usize, m: usize, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        let alpha: Vec<String> = r_decompose(g, n, m)?.iter().map(format_rat).collect();
        unsafe { write_string(out, to_json(&alpha)) }
    })
}

/// Betti-number upper bounds as `{"rows": {"j": {"i": "p/q"}}}`.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_betti_bounds(series: *const HcSeries, n: usize, m: usize, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let g = unsafe { series_ref(series) }?;
        let table = betti_bounds(g, n, m)?;
        unsafe { write_string(out, to_json(&table)) }
    })
}

/// Number of degree-`j` monomials outside the ideal generated by `ngens`
/// exponent vectors stored row-major in `exponents` (`ngens * nvars`
/// entries).
///
/// # Safety
/// `exponents` must point to `ngens * nvars` readable values (it may be null
/// when `ngens == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_hf_monomial_quotient(
    nvars: usize,
    exponents: *const u32,
    ngens: usize,
    j: u32,
    out: *mut u64,
) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let flat: &[u32] = if ngens == 0 {
            &[]
        } else if exponents.is_null() {
            return Err(null("exponents"));
        } else {
            let len = ngens
                .checked_mul(nvars)
                .ok_or_else(|| Failure(HcStatus::Domain, "ngens * nvars overflows".into()))?;
            // SAFETY: the caller guarantees `len` readable values.
            unsafe { std::slice::from_raw_parts(exponents, len) }
        };
        let gens = if nvars == 0 {
            Vec::new()
        } else {
            flat.chunks(nvars).map(<[u32]>::to_vec).collect()
        };
        let ideal = MonomialIdeal::new(nvars, gens)?;
        unsafe { *out = hf_monomial_quotient(&ideal, j) };
        Ok(())
    })
}
