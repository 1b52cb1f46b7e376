//! C ABI over `lpsi-core`.
//!
//! Families are opaque handles created by [`lpsi_family_parse`] and released
//! with [`lpsi_family_free`]. Every other call returns an [`LpsiStatus`] and
//! writes its result through an out-pointer; on failure the message is kept
//! per thread and can be copied out with [`lpsi_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lpsi_core::bounds::{self, BoundBracket, BoundSettings};
use lpsi_core::{tails, CertifiedValue, Error, PsiFamily};

/// Status codes; `LPSI_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpsiStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Domain = 3,
    Hypothesis = 4,
    Numerical = 5,
    Precondition = 6,
    Panic = 7,
}

/// Opaque family handle.
pub struct LpsiFamily {
    inner: PsiFamily,
}

/// Value with an absolute error bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LpsiCertified {
    pub value: f64,
    pub error_bound: f64,
}

/// Theorem bracket: `lower <= witness <= upper`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LpsiBracket {
    pub lower: f64,
    pub witness: LpsiCertified,
    pub upper: f64,
    /// Number of auxiliary checks evaluated.
    pub checks: u32,
    /// 1 when the ordering and every auxiliary check hold.
    pub holds: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> LpsiStatus {
    match e {
        Error::Parse(_) => LpsiStatus::Parse,
        Error::Domain(_) => LpsiStatus::Domain,
        Error::Hypothesis(_) => LpsiStatus::Hypothesis,
        Error::Precondition(_) => LpsiStatus::Precondition,
        Error::Singular(_)
        | Error::Divergent(_)
        | Error::ToleranceUnreachable { .. }
        | Error::Range { .. }
        | Error::IndexOverflow(_) => LpsiStatus::Numerical,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LpsiStatus, String)>) -> LpsiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            LpsiStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LpsiStatus::Panic
        }
    }
}

fn lift<T>(r: lpsi_core::Result<T>) -> Result<T, (LpsiStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LpsiStatus, String) {
    (LpsiStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `ptr` must be null or valid for reads of `T`.
unsafe fn borrow<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, (LpsiStatus, String)> {
    // SAFETY: caller guarantees validity when non-null
    unsafe { ptr.as_ref() }.ok_or_else(|| null(what))
}

/// # Safety
/// `ptr` must be null or valid for writes of `T`.
unsafe fn write<T>(ptr: *mut T, value: T, what: &str) -> Result<(), (LpsiStatus, String)> {
    if ptr.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and valid per the caller's contract
    unsafe { ptr.write(value) };
    Ok(())
}

fn certified(v: CertifiedValue) -> LpsiCertified {
    LpsiCertified { value: v.value, error_bound: v.error_bound }
}

fn settings(tol: f64) -> BoundSettings {
    BoundSettings { tol, ..BoundSettings::default() }
}

/// Parses a family spec such as `power:r=2` or `harmlog:gamma=2,K1=exp(2)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_parse(spec: *const c_char, out: *mut *mut LpsiFamily) -> LpsiStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        // SAFETY: non-null, NUL-terminated per contract
        let text = unsafe { CStr::from_ptr(spec) }
            .to_str()
            .map_err(|_| (LpsiStatus::Parse, "spec is not valid UTF-8".to_string()))?;
        let family = lift(text.parse::<PsiFamily>())?;
        let handle = Box::into_raw(Box::new(LpsiFamily { inner: family }));
        // SAFETY: `out` checked inside `write`
        unsafe { write(out, handle, "out") }.inspect_err(|_| {
            // SAFETY: `handle` was just created by `Box::into_raw`
            drop(unsafe { Box::from_raw(handle) });
        })
    })
}

/// Releases a handle from [`lpsi_family_parse`]; null is ignored.
///
/// # Safety
/// `family` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_free(family: *mut LpsiFamily) {
    if !family.is_null() {
        // SAFETY: handle came from `Box::into_raw` in `lpsi_family_parse`
        drop(unsafe { Box::from_raw(family) });
    }
}

/// Writes the canonical spec of `family` (NUL-terminated, truncated to
/// `len`) and returns the full length excluding the terminator.
///
/// # Safety
/// `family` must be a live handle; `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_describe(family: *const LpsiFamily, buf: *mut c_char, len: usize) -> usize {
    // SAFETY: per contract
    match unsafe { family.as_ref() } {
        Some(f) => unsafe { copy_out(&f.inner.to_string(), buf, len) },
        None => 0,
    }
}

/// `ψ(t)` for `t >= 1`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_eval(family: *const LpsiFamily, t: f64, out: *mut f64) -> LpsiStatus {
    guard(|| {
        // SAFETY: per contract
        let f = unsafe { borrow(family, "family") }?;
        let v = lift(f.inner.eval(t))?;
        unsafe { write(out, v, "out") }
    })
}

/// `α(ψ;t) = ψ(t)/(t|ψ'(t)|)`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_alpha(family: *const LpsiFamily, t: f64, out: *mut f64) -> LpsiStatus {
    guard(|| {
        let f = unsafe { borrow(family, "family") }?;
        let v = lift(f.inner.alpha(t))?;
        unsafe { write(out, v, "out") }
    })
}

/// `inf_{t>=n} α(ψ;t)` (`upper == 0`) or `sup_{t>=n} α(ψ;t)` (`upper != 0`);
/// an unbounded supremum is reported as `+inf`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_family_alpha_extremum(
    family: *const LpsiFamily,
    n: u64,
    upper: u8,
    out: *mut f64,
) -> LpsiStatus {
    guard(|| {
        let f = unsafe { borrow(family, "family") }?;
        let a = lift(if upper != 0 { f.inner.alpha_sup_default(n) } else { f.inner.alpha_inf_default(n) })?;
        unsafe { write(out, a.value, "out") }
    })
}

/// `Σ_{k>=n} ψ^a(k) k^b` to absolute accuracy `tol`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_tail_sum(
    family: *const LpsiFamily,
    a: f64,
    b: f64,
    n: u64,
    tol: f64,
    out: *mut LpsiCertified,
) -> LpsiStatus {
    guard(|| {
        let f = unsafe { borrow(family, "family") }?;
        let v = lift(tails::weighted_tail_sum(&f.inner, a, b, n, tol))?;
        unsafe { write(out, certified(v), "out") }
    })
}

/// `ξ(s)` for `1 < s < ∞`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_xi(s: f64, out: *mut f64) -> LpsiStatus {
    guard(|| {
        let v = lift(bounds::xi(s))?;
        unsafe { write(out, v, "out") }
    })
}

/// `(1/π)‖Ψ_{β,n}‖_s`; pass `INFINITY` for the uniform metric.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_fourier_upper(
    family: *const LpsiFamily,
    s: f64,
    beta: f64,
    n: u64,
    tol: f64,
    out: *mut LpsiCertified,
) -> LpsiStatus {
    guard(|| {
        let f = unsafe { borrow(family, "family") }?;
        let v = lift(bounds::fourier_upper(&f.inner, s, beta, n, &settings(tol)))?;
        unsafe { write(out, certified(v), "out") }
    })
}

/// Bracket of theorem `1..=4`; `s` is used by theorem 1 only.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_theorem_bracket(
    family: *const LpsiFamily,
    theorem: u32,
    s: f64,
    beta: f64,
    n: u64,
    tol: f64,
    out: *mut LpsiBracket,
) -> LpsiStatus {
    guard(|| {
        let f = unsafe { borrow(family, "family") }?;
        let cfg = settings(tol);
        let b: BoundBracket = lift(match theorem {
            1 => bounds::theorem1_bracket(&f.inner, s, beta, n, &cfg),
            2 => bounds::theorem2_bracket(&f.inner, beta, n, &cfg),
            3 => bounds::theorem3_bracket(&f.inner, beta, n, &cfg),
            4 => bounds::theorem4_bracket(&f.inner, beta, n, &cfg),
            other => Err(Error::Domain(format!("theorem must be 1..=4, got {other}"))),
        })?;
        let r = LpsiBracket {
            lower: b.lower,
            witness: certified(b.witness),
            upper: b.upper,
            checks: b.checks.len() as u32,
            holds: b.holds() as u8,
        };
        unsafe { write(out, r, "out") }
    })
}

/// # Safety
/// `buf` must be null or valid for `len` bytes.
unsafe fn copy_out(text: &str, buf: *mut c_char, len: usize) -> usize {
    if !buf.is_null() && len > 0 {
        let n = text.len().min(len - 1);
        // SAFETY: `buf` holds at least `len > n` bytes
        unsafe {
            std::ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
    }
    text.len()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`) and returns its full length; 0 after a success.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lpsi_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| unsafe { copy_out(&e.borrow(), buf, len) })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lpsi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
