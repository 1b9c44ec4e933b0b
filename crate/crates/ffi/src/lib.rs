//! C ABI for `toric-jacobian`.
//!
//! Objects are opaque handles created by `tj_*_new`-style constructors and
//! released with the matching `*_free`. Every fallible call returns a
//! [`TjStatus`] and writes its result through an out-pointer; on failure
//! [`tj_last_error`] describes what went wrong on the calling thread. Strings
//! handed out by the library are released with [`tj_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use toric_jacobian::criterion::{evaluate, paper_table, quick_criterion};
use toric_jacobian::divisor::{genus, h0, representative};
use toric_jacobian::io::fan_from_json;
use toric_jacobian::poly::parse_polynomial;
use toric_jacobian::{Error, Fan, JacobianSystem, PicClass, TorusDivisor};

/// Opaque fan handle.
pub struct TjFan(Fan);

/// Opaque handle on a polynomial together with its Jacobian data.
pub struct TjSystem(JacobianSystem);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Internal = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(TjStatus);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Failure(if e.is_internal() {
            TjStatus::Internal
        } else {
            TjStatus::InvalidInput
        })
    }
}

fn null(what: &str) -> Failure {
    set_error(format!("{what} is null"));
    Failure(TjStatus::NullPointer)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TjStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TjStatus::Ok,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("panic inside toric-jacobian");
            TjStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        Failure(TjStatus::InvalidUtf8)
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a>(p: *const i64, len: usize, what: &str) -> Result<&'a [i64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("output contains a NUL byte");
        Failure(TjStatus::Internal)
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn tj_fan_hirzebruch(r: u32, out: *mut *mut TjFan) -> TjStatus {
    guard(|| {
        *out_arg(out, "out")? = Box::into_raw(Box::new(TjFan(Fan::hirzebruch(r))));
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn tj_fan_projective_plane(out: *mut *mut TjFan) -> TjStatus {
    guard(|| {
        *out_arg(out, "out")? = Box::into_raw(Box::new(TjFan(Fan::projective_plane())));
        Ok(())
    })
}

/// Builds a fan from `{"rays": [[a,b],...], "labels": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tj_fan_from_json(json: *const c_char, out: *mut *mut TjFan) -> TjStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(TjFan(fan_from_json(text)?)));
        Ok(())
    })
}

/// # Safety
/// `fan` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tj_fan_free(fan: *mut TjFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// # Safety
/// `fan` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_fan_ray_count(fan: *const TjFan, out: *mut usize) -> TjStatus {
    guard(|| {
        let fan = ref_arg(fan, "fan")?;
        *out_arg(out, "out")? = fan.0.n();
        Ok(())
    })
}

unsafe fn divisor(fan: &Fan, coeffs: *const i64, len: usize) -> Result<TorusDivisor, Failure> {
    let d = TorusDivisor::new(slice_arg(coeffs, len, "coeffs")?.to_vec());
    d.check_len(fan)?;
    Ok(d)
}

/// Number of sections of `sum coeffs[i] D_i`.
///
/// # Safety
/// `coeffs` must point to `len` integers; `fan` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_h0(
    fan: *const TjFan,
    coeffs: *const i64,
    len: usize,
    out: *mut u64,
) -> TjStatus {
    guard(|| {
        let fan = &ref_arg(fan, "fan")?.0;
        let d = divisor(fan, coeffs, len)?;
        *out_arg(out, "out")? = h0(fan, &d) as u64;
        Ok(())
    })
}

/// Arithmetic genus of a curve in `|sum coeffs[i] D_i|`.
///
/// # Safety
/// As for [`tj_h0`].
#[no_mangle]
pub unsafe extern "C" fn tj_genus(
    fan: *const TjFan,
    coeffs: *const i64,
    len: usize,
    out: *mut i64,
) -> TjStatus {
    guard(|| {
        let fan = &ref_arg(fan, "fan")?.0;
        let d = divisor(fan, coeffs, len)?;
        *out_arg(out, "out")? = genus(fan, &d)?;
        Ok(())
    })
}

/// Parses a homogeneous polynomial written in the fan's variable labels.
///
/// # Safety
/// `fan` live, `poly` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_system_new(
    fan: *const TjFan,
    poly: *const c_char,
    out: *mut *mut TjSystem,
) -> TjStatus {
    guard(|| {
        let fan = &ref_arg(fan, "fan")?.0;
        let text = str_arg(poly, "poly")?;
        let out = out_arg(out, "out")?;
        let f = parse_polynomial(text, fan.labels())?;
        *out = Box::into_raw(Box::new(TjSystem(JacobianSystem::new(fan, f)?)));
        Ok(())
    })
}

/// # Safety
/// `sys` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tj_system_free(sys: *mut TjSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// `dim R1(f)` in the class `a beta + b K`.
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_system_r1_dim(
    sys: *const TjSystem,
    a: i64,
    b: i64,
    out: *mut u64,
) -> TjStatus {
    guard(|| {
        let sys = &ref_arg(sys, "sys")?.0;
        *out_arg(out, "out")? = sys.r1_dim(&sys.class_combo(a, b))? as u64;
        Ok(())
    })
}

/// `dim J1(f)` in the class with Picard coordinates `coords[0..len]`.
///
/// # Safety
/// `sys` live, `coords` points to `len` integers, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_system_j1_dim(
    sys: *const TjSystem,
    coords: *const i64,
    len: usize,
    out: *mut u64,
) -> TjStatus {
    guard(|| {
        let sys = &ref_arg(sys, "sys")?.0;
        let coords = slice_arg(coords, len, "coords")?.to_vec();
        if coords.len() != sys.beta().coords.len() {
            return Err(Error::Length {
                expected: sys.beta().coords.len(),
                got: coords.len(),
            }
            .into());
        }
        *out_arg(out, "out")? = sys.j1_piece(&PicClass::new(coords))?.dim() as u64;
        Ok(())
    })
}

/// Writes 1 if the Euler terms have no common zero on the surface, else 0.
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_system_is_nondegenerate(sys: *const TjSystem, out: *mut i32) -> TjStatus {
    guard(|| {
        let sys = &ref_arg(sys, "sys")?.0;
        *out_arg(out, "out")? = i32::from(sys.nondegenerate_decide().is_nondegenerate());
        Ok(())
    })
}

/// Criterion report as JSON; `quick != 0` selects the `K^2 + 1` variant.
/// Free the result with [`tj_string_free`].
///
/// # Safety
/// `sys` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_system_criterion_json(
    sys: *const TjSystem,
    quick: i32,
    out: *mut *mut c_char,
) -> TjStatus {
    guard(|| {
        let sys = &ref_arg(sys, "sys")?.0;
        let out = out_arg(out, "out")?;
        let beta = representative(sys.fan(), sys.beta());
        let report = if quick != 0 {
            quick_criterion(sys.fan(), &beta, sys.f())?
        } else {
            evaluate(sys.fan(), &beta, sys.f())?
        };
        let json = serde_json::to_string(&report).map_err(Error::from)?;
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// `dim R1(f_d)_beta` and the criterion on the first Hirzebruch surface for
/// `d` in `from..=to`, as a JSON array. Free with [`tj_string_free`].
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tj_paper_table_json(from: u32, to: u32, out: *mut *mut c_char) -> TjStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let rows = paper_table(from..=to)?;
        *out = into_c_string(serde_json::to_string(&rows).map_err(Error::from)?)?;
        Ok(())
    })
}
