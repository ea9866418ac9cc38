//! C ABI over `qaw-core`.
//!
//! Every fallible function returns a [`QawStatus`] and writes results through
//! out-pointers. On failure a message is kept per thread and can be copied out
//! with [`qaw_last_error_message`]. Handles are opaque; each `*_free` accepts
//! null. Strings cross the boundary as NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qaw_core::awcore::{dq_apply, sq_apply};
use qaw_core::families::{counterexample_family, dual_qhahn_family, FamilyParams, OPSFamily};
use qaw_core::inductor::{verify_proof, DEFAULT_K_SAMPLES};
use qaw_core::numeric::{eval_poly, numeric_crosscheck, NumericConfig};
use qaw_core::parse::{parse_scalar, parse_xpoly};
use qaw_core::structure::verify_proposition;
use qaw_core::{Error, XPoly};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    BufferTooSmall = 4,
    /// Arithmetic failure such as a vanishing denominator.
    Domain = 5,
    Panic = 6,
}

/// Output syntax for [`qaw_poly_render`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QawFormat {
    Text = 0,
    Latex = 1,
}

/// A family of monic orthogonal polynomials.
pub struct QawFamily {
    inner: OPSFamily,
}

/// A polynomial in `x` with coefficients in `Q(t, u)`, `t = q^(1/4)`, `u = q^(n/2)`.
pub struct QawPoly {
    inner: XPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

type Fail = (QawStatus, String);

fn from_core(e: Error) -> Fail {
    let status = match e {
        Error::Parse { .. } => QawStatus::Parse,
        Error::InvalidParameter(_) | Error::Config(_) | Error::Degenerate(_) | Error::MissingIndex => {
            QawStatus::InvalidArgument
        }
        _ => QawStatus::Domain,
    };
    (status, e.to_string())
}

fn null(what: &str) -> Fail {
    (QawStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QawStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return QawStatus::Ok,
        Ok(Err(fail)) => fail,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (QawStatus::Panic, msg)
        }
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QawStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn poly_ref<'a>(p: *const QawPoly) -> Result<&'a XPoly, Fail> {
    p.as_ref().map(|p| &p.inner).ok_or_else(|| null("poly"))
}

/// Copies `s` plus a NUL into `buf` when it fits. `len` always receives the
/// byte length without the NUL.
unsafe fn copy_text(s: &str, buf: *mut c_char, cap: usize, len: *mut usize) -> Result<(), Fail> {
    if !len.is_null() {
        len.write(s.len());
    }
    if cap <= s.len() {
        return Err((QawStatus::BufferTooSmall, format!("need {} bytes, have {cap}", s.len() + 1)));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

fn boxed_poly(p: XPoly) -> *mut QawPoly {
    Box::into_raw(Box::new(QawPoly { inner: p }))
}

/// Library version, static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qaw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last failure message of this thread into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `len` may be null.
#[no_mangle]
pub unsafe extern "C" fn qaw_last_error_message(buf: *mut c_char, cap: usize, len: *mut usize) -> QawStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_text(&msg, buf, cap, len) {
        Ok(()) => QawStatus::Ok,
        Err((status, _)) => status,
    }
}

/// The closed-form family with `B_n`, `C_n` at `(1, -1, q^(1/4) | q^(1/2))`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_family_counterexample(out: *mut *mut QawFamily) -> QawStatus {
    guard(|| {
        let fam = Box::into_raw(Box::new(QawFamily { inner: counterexample_family() }));
        write_out(out, fam, "out").inspect_err(|_| drop(Box::from_raw(fam)))
    })
}

/// Dual q-Hahn family; parameters are scalar expressions in `t` such as `"t^2"`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_family_dual_qhahn(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    base: *const c_char,
    out: *mut *mut QawFamily,
) -> QawStatus {
    guard(|| {
        let s = |p, what| read_str(p, what).and_then(|text| parse_scalar(text).map_err(from_core));
        let params = FamilyParams::new(s(a, "a")?, s(b, "b")?, s(c, "c")?, s(base, "base")?).map_err(from_core)?;
        let fam = dual_qhahn_family(&params).map_err(from_core)?;
        let fam = Box::into_raw(Box::new(QawFamily { inner: fam }));
        write_out(out, fam, "out").inspect_err(|_| drop(Box::from_raw(fam)))
    })
}

/// # Safety
/// `fam` must be null or come from a `qaw_family_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn qaw_family_free(fam: *mut QawFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// The degree-`n` member of `fam`.
///
/// # Safety
/// `fam` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_family_poly(fam: *const QawFamily, n: usize, out: *mut *mut QawPoly) -> QawStatus {
    guard(|| {
        let fam = fam.as_ref().ok_or_else(|| null("family"))?;
        let p = boxed_poly((*fam.inner.poly(n)).clone());
        write_out(out, p, "out").inspect_err(|_| drop(Box::from_raw(p)))
    })
}

/// Parses text such as `"(t^2 - 1) x^2 + u x - 3/4"`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_parse(text: *const c_char, out: *mut *mut QawPoly) -> QawStatus {
    guard(|| {
        let f = parse_xpoly(read_str(text, "text")?).map_err(from_core)?;
        let p = boxed_poly(f);
        write_out(out, p, "out").inspect_err(|_| drop(Box::from_raw(p)))
    })
}

/// # Safety
/// `poly` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_free(poly: *mut QawPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree, or -1 for the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_degree(poly: *const QawPoly, out: *mut i64) -> QawStatus {
    guard(|| {
        let d = poly_ref(poly)?.degree().map_or(-1, |d| d as i64);
        write_out(out, d, "out")
    })
}

/// Renders `poly` into `buf`. With `cap` too small, returns
/// `QAW_STATUS_BUFFER_TOO_SMALL` and still sets `len`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `len` may be null.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_render(
    poly: *const QawPoly,
    format: QawFormat,
    buf: *mut c_char,
    cap: usize,
    len: *mut usize,
) -> QawStatus {
    guard(|| {
        let p = poly_ref(poly)?;
        let text = match format {
            QawFormat::Text => p.to_string(),
            QawFormat::Latex => p.to_latex(),
        };
        copy_text(&text, buf, cap, len)
    })
}

/// Value at real `x` for `0 < q`. Fails with `QAW_STATUS_INVALID_ARGUMENT`
/// when a coefficient depends on `u`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_eval(poly: *const QawPoly, q: f64, x: f64, out: *mut f64) -> QawStatus {
    guard(|| {
        let p = poly_ref(poly)?;
        if !(q > 0.0 && q.is_finite() && x.is_finite()) {
            return Err((QawStatus::InvalidArgument, format!("need q > 0 and finite x, got q = {q}, x = {x}")));
        }
        write_out(out, eval_poly(p, q, None, x).map_err(from_core)?, "out")
    })
}

/// Substitutes `u = q^(n/2)`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_instantiate(poly: *const QawPoly, n: i64, out: *mut *mut QawPoly) -> QawStatus {
    guard(|| {
        let f = poly_ref(poly)?.try_map_coeffs(|c| c.instantiate_n(n)).map_err(from_core)?;
        let p = boxed_poly(f);
        write_out(out, p, "out").inspect_err(|_| drop(Box::from_raw(p)))
    })
}

/// Divided-difference operator `D_q`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_dq(poly: *const QawPoly, out: *mut *mut QawPoly) -> QawStatus {
    guard(|| {
        let p = boxed_poly(dq_apply(poly_ref(poly)?).map_err(from_core)?);
        write_out(out, p, "out").inspect_err(|_| drop(Box::from_raw(p)))
    })
}

/// Averaging operator `S_q`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_poly_sq(poly: *const QawPoly, out: *mut *mut QawPoly) -> QawStatus {
    guard(|| {
        let p = boxed_poly(sq_apply(poly_ref(poly)?).map_err(from_core)?);
        write_out(out, p, "out").inspect_err(|_| drop(Box::from_raw(p)))
    })
}

/// Exact check of both structure relations for `n <= nmax`.
///
/// # Safety
/// `passed` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_verify_proposition(nmax: usize, passed: *mut bool) -> QawStatus {
    guard(|| {
        let rep = verify_proposition(nmax).map_err(from_core)?;
        write_out(passed, rep.all_pass(), "passed")
    })
}

/// Symbolic certificates of the inductive proof at the default samples.
///
/// # Safety
/// `passed` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qaw_verify_proof(passed: *mut bool) -> QawStatus {
    guard(|| {
        let rep = verify_proof(&DEFAULT_K_SAMPLES).map_err(from_core)?;
        write_out(passed, rep.all_pass(), "passed")
    })
}

/// Floating-point cross-check on the default grid. `max_rel_dev` may be null.
///
/// # Safety
/// `passed` must be valid for a write; `max_rel_dev` null or valid.
#[no_mangle]
pub unsafe extern "C" fn qaw_verify_numeric(nmax: usize, max_rel_dev: *mut f64, passed: *mut bool) -> QawStatus {
    guard(|| {
        let s = numeric_crosscheck(&NumericConfig::default(), nmax).map_err(from_core)?;
        if !max_rel_dev.is_null() {
            max_rel_dev.write(s.max_rel_dev.max(s.max_rel_dev_exact));
        }
        write_out(passed, s.status.is_pass(), "passed")
    })
}
