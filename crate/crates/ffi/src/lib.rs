//! C interface to `mospher`.
//!
//! Objects are opaque handles created by `*_new` and released by `*_free`.
//! Every fallible function returns a [`MospherStatus`]; on failure the message
//! is available from [`mospher_last_error`] on the same thread. Strings
//! returned through `out` pointers are owned by the caller and must be
//! released with [`mospher_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mospher::export::{render, sn_fundamental_json, so4_gen_json, verify_json};
use mospher::sn::{sn_weight, SnFundamentalCase};
use mospher::so4::{h_eval, So4};
use mospher::verify::{sn_suite, so4_suite};
use mospher::zonal::{zonal_phi, Space, ZonalFamily};
use mospher::Error;
use serde_json::json;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MospherStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    OutOfDomain = 3,
    ShapeMismatch = 4,
    Numerical = 5,
    IdentityViolated = 6,
    InvalidUtf8 = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

impl From<&Error> for MospherStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::InsufficientNodes { .. } => MospherStatus::InvalidParameter,
            Error::OutOfDomain(_) => MospherStatus::OutOfDomain,
            Error::ShapeMismatch(_) => MospherStatus::ShapeMismatch,
            Error::IdentityViolated(_) | Error::ClosingViolated(_) => MospherStatus::IdentityViolated,
            Error::NonConstantDeterminant
            | Error::PoleInC(_)
            | Error::SingularStep(_)
            | Error::NoConvergence(_)
            | Error::PerfectSquareDiscriminant(_) => MospherStatus::Numerical,
        }
    }
}

/// Cached data of the SO(4) family for one `ell`.
pub struct MospherSo4 {
    inner: So4,
}

/// A fundamental `K`-type on the sphere `S^n`.
pub struct MospherSnCase {
    inner: SnFundamentalCase,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(MospherStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(MospherStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MospherStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MospherStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MospherStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MospherStatus::Panic
        }
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(MospherStatus::InvalidUtf8, "output contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn checked_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(null("out"))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mospher_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mospher_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mospher_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the SO(4) family for `ell`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_new(ell: u32, out: *mut *mut MospherSo4) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        *out = ptr::null_mut();
        let inner = So4::new(ell as usize);
        *out = Box::into_raw(Box::new(MospherSo4 { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`mospher_so4_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_free(h: *mut MospherSo4) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_ell(h: *const MospherSo4) -> u32 {
    h.as_ref().map_or(0, |h| h.inner.ell() as u32)
}

/// JSON document with `P_w`, `P̃_w`, `Λ_w`, `M_w` and the weight.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_gen_json(h: *const MospherSo4, w: u32, out: *mut *mut c_char) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        let h = handle(h, "handle")?;
        write_string(out, render(&so4_gen_json(h.inner.ell(), w as usize)))
    })
}

/// Column `k` of `H(u)`, written as `ell + 1` pairs into `re` and `im`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_eval(
    h: *const MospherSo4,
    w: u32,
    k: u32,
    u: f64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> MospherStatus {
    guard(|| {
        let h = handle(h, "handle")?;
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        let dim = h.inner.ell() + 1;
        if len < dim {
            return Err(Failure(MospherStatus::BufferTooSmall, format!("buffer holds {len} values, need {dim}")));
        }
        let v = h_eval(h.inner.ell(), w as usize, k as usize, u)?;
        for (i, z) in v.iter().enumerate() {
            *re.add(i) = z.re;
            *im.add(i) = z.im;
        }
        Ok(())
    })
}

/// JSON verification report for `w <= max_w`; `nodes = 0` picks the default.
///
/// # Safety
/// `h` must be a live handle, `out` and `all_pass` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mospher_so4_verify_json(
    h: *const MospherSo4,
    max_w: u32,
    nodes: u32,
    all_pass: *mut bool,
    out: *mut *mut c_char,
) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        checked_out(all_pass)?;
        let ell = handle(h, "handle")?.inner.ell();
        let report = so4_suite(ell, max_w as usize, (nodes > 0).then_some(nodes as usize))?;
        *all_pass = report.checks.iter().all(|c| c.pass);
        let doc = verify_json("so4.verify", vec![("ell", json!(ell)), ("max_w", json!(max_w))], &report.checks, &report.gram);
        write_string(out, render(&doc))
    })
}

/// Creates the fundamental case with `p` ones on `S^n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_sn_case_new(n: u32, p: u32, out: *mut *mut MospherSnCase) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        *out = ptr::null_mut();
        let inner = SnFundamentalCase::new(n as usize, p as usize)?;
        *out = Box::into_raw(Box::new(MospherSnCase { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`mospher_sn_case_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mospher_sn_case_free(h: *mut MospherSnCase) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// JSON document of the polynomial solution of degree `w` with leading
/// direction `delta` (0 or 1).
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_sn_fundamental_json(
    h: *const MospherSnCase,
    w: u32,
    delta: i32,
    out: *mut *mut c_char,
) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        let c = &handle(h, "handle")?.inner;
        write_string(out, render(&sn_fundamental_json(c.n, c.p, w as usize, delta)?))
    })
}

/// Constant `(n-1)!/Γ(n/2)²` making the scalar factor of the weight a
/// probability density on `[0, 1]`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_sn_normalization(h: *const MospherSnCase, out: *mut f64) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        let c = &handle(h, "handle")?.inner;
        *out = sn_weight(c.n, c.p)?.normalization();
        Ok(())
    })
}

/// JSON verification report for `w <= max_w`; `nodes = 0` picks the default.
///
/// # Safety
/// `h` must be a live handle, `out` and `all_pass` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mospher_sn_verify_json(
    h: *const MospherSnCase,
    max_w: u32,
    nodes: u32,
    all_pass: *mut bool,
    out: *mut *mut c_char,
) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        checked_out(all_pass)?;
        let c = &handle(h, "handle")?.inner;
        let report = sn_suite(c.n, c.p, max_w as usize, (nodes > 0).then_some(nodes as usize))?;
        *all_pass = report.checks.iter().all(|c| c.pass);
        let params = vec![("n", json!(c.n)), ("p", json!(c.p)), ("max_w", json!(max_w))];
        write_string(out, render(&verify_json("sn.verify", params, &report.checks, &report.gram)))
    })
}

/// `φ_j(x)` for the space named `space` (`sphere`, `projreal`,
/// `projcomplex`, `projquat`, `cayley`).
///
/// # Safety
/// `space` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mospher_zonal_phi(space: *const c_char, n: u32, j: u32, x: f64, out: *mut f64) -> MospherStatus {
    guard(|| {
        checked_out(out)?;
        if space.is_null() {
            return Err(null("space"));
        }
        let name = CStr::from_ptr(space)
            .to_str()
            .map_err(|_| Failure(MospherStatus::InvalidUtf8, "space is not UTF-8".into()))?;
        let family = ZonalFamily::new(name.parse::<Space>()?, n as usize)?;
        *out = zonal_phi(&family, j as usize).eval_f64(x).re;
        Ok(())
    })
}
