//! C ABI for `screwline`.
//!
//! Objects cross the boundary as opaque handles created by a constructor and
//! released by the matching `*_free`. Every fallible call returns a
//! [`ScrewlineStatus`]; on failure the message is available from
//! [`screwline_last_error`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`screwline_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use screwline::canonical::{factorize, fundamental_solution_at, Hamiltonian};
use screwline::classical::stieltjes_string;
use screwline::cli::json::{self, HamiltonianJson, RationalFunctionJson, ScrewJson, StringJson, TransferJson};
use screwline::cli::pipeline::{run_appendix, run_g0, run_pw, PipelineOptions};
use screwline::cli::report::VerificationReport;
use screwline::screw::{eval_screw, pd_check, uniform_grid, ScrewFunctionData};
use screwline::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScrewlineStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON, a schema violation or an out-of-range argument.
    InvalidInput = 3,
    /// The library rejected well-formed input.
    MathError = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

/// Step Hamiltonian on `[0, L]`.
pub struct ScrewlineHamiltonian(Hamiltonian);

/// Screw function given by its data `(g₀, c, τ)`.
pub struct ScrewlineScrew(ScrewFunctionData);

/// Verification report of a pipeline run.
pub struct ScrewlineReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ScrewlineStatus, msg: impl Into<String>) -> ScrewlineStatus {
    set_error(msg.into());
    status
}

fn module_error(e: Error) -> ScrewlineStatus {
    let status = match e {
        Error::InvalidInput(_) | Error::OutOfRange(_) => ScrewlineStatus::InvalidInput,
        _ => ScrewlineStatus::MathError,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`ScrewlineStatus::Panic`].
fn guard<F: FnOnce() -> ScrewlineStatus>(f: F) -> ScrewlineStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == ScrewlineStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(ScrewlineStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ScrewlineStatus> {
    if s.is_null() {
        return Err(fail(ScrewlineStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(ScrewlineStatus::InvalidUtf8, e.to_string()))
}

fn parse<T: for<'de> serde::Deserialize<'de>>(text: &str) -> Result<T, ScrewlineStatus> {
    json::from_str(text).map_err(|e| fail(ScrewlineStatus::InvalidInput, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> ScrewlineStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ScrewlineStatus::Ok
        }
        Err(e) => fail(ScrewlineStatus::InvalidInput, e.to_string()),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(ScrewlineStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn screwline_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn screwline_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Factorizes a transfer matrix given as JSON `{"A","B","C","D"}` into a step Hamiltonian.
///
/// # Safety
/// `w_json` must be a NUL-terminated string and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn screwline_factorize(w_json: *const c_char, out: *mut *mut ScrewlineHamiltonian) -> ScrewlineStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(w_json));
        let w = try_status!(try_status!(parse::<TransferJson>(text)).to_domain().map_err(|e| fail(ScrewlineStatus::InvalidInput, e.to_string())));
        match factorize(&w) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(ScrewlineHamiltonian(h)));
                ScrewlineStatus::Ok
            }
            Err(e) => module_error(e),
        }
    })
}

/// Parses a Hamiltonian from JSON `{"segments": [...]}`.
///
/// # Safety
/// `h_json` must be a NUL-terminated string and `out` a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn screwline_hamiltonian_from_json(
    h_json: *const c_char,
    out: *mut *mut ScrewlineHamiltonian,
) -> ScrewlineStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(h_json));
        match try_status!(parse::<HamiltonianJson>(text)).to_domain() {
            Ok(h) => {
                *out = Box::into_raw(Box::new(ScrewlineHamiltonian(h)));
                ScrewlineStatus::Ok
            }
            Err(e) => fail(ScrewlineStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Number of segments of `h`, or 0 when `h` is null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn screwline_hamiltonian_segment_count(h: *const ScrewlineHamiltonian) -> usize {
    h.as_ref().map_or(0, |h| h.0.segments().len())
}

/// Writes the length and angle (radians) of segment `k`.
///
/// # Safety
/// `h` must be a live handle; `length` and `theta` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_hamiltonian_segment(
    h: *const ScrewlineHamiltonian,
    k: usize,
    length: *mut f64,
    theta: *mut f64,
) -> ScrewlineStatus {
    guard(|| {
        non_null!(h, length, theta);
        match (*h).0.segments().get(k) {
            Some(s) => {
                *length = num_traits::ToPrimitive::to_f64(&s.length).unwrap_or(f64::NAN);
                *theta = s.theta.to_f64();
                ScrewlineStatus::Ok
            }
            None => fail(ScrewlineStatus::InvalidInput, format!("segment {k} out of range")),
        }
    })
}

/// Serializes `h` as JSON. The string must be released with [`screwline_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_hamiltonian_to_json(h: *const ScrewlineHamiltonian, out: *mut *mut c_char) -> ScrewlineStatus {
    guard(|| {
        non_null!(h, out);
        write_string(out, json::to_string(&HamiltonianJson::from_domain(&(*h).0)))
    })
}

/// Fundamental solution `W(t, z)` of `h`, written row-major as
/// `[A.re, A.im, B.re, B.im, C.re, C.im, D.re, D.im]`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for 8 writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_fundamental_solution(
    h: *const ScrewlineHamiltonian,
    t: f64,
    z_re: f64,
    z_im: f64,
    out: *mut f64,
) -> ScrewlineStatus {
    guard(|| {
        non_null!(h, out);
        match fundamental_solution_at(&(*h).0, t, Complex64::new(z_re, z_im)) {
            Ok(w) => {
                let out = std::slice::from_raw_parts_mut(out, 8);
                for (k, c) in w.iter().flatten().enumerate() {
                    out[2 * k] = c.re;
                    out[2 * k + 1] = c.im;
                }
                ScrewlineStatus::Ok
            }
            Err(e) => module_error(e),
        }
    })
}

/// Releases a Hamiltonian handle.
///
/// # Safety
/// `h` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn screwline_hamiltonian_free(h: *mut ScrewlineHamiltonian) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Krein string of a rational string function `q` given as `{"num","den"}`, as JSON.
///
/// # Safety
/// `q_json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_string(q_json: *const c_char, out: *mut *mut c_char) -> ScrewlineStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(q_json));
        let q = try_status!(try_status!(parse::<RationalFunctionJson>(text)).to_domain().map_err(|e| fail(ScrewlineStatus::InvalidInput, e.to_string())));
        match stieltjes_string(&q) {
            Ok(s) => write_string(out, json::to_string(&StringJson::from_domain(&s))),
            Err(e) => module_error(e),
        }
    })
}

/// The screw function `g₀(t) = −t²/2 + cos t − 1`.
#[no_mangle]
pub extern "C" fn screwline_screw_example_g0() -> *mut ScrewlineScrew {
    Box::into_raw(Box::new(ScrewlineScrew(ScrewFunctionData::example_g0())))
}

/// Parses a screw function from JSON `{"g0","c","tau"}`.
///
/// # Safety
/// `g_json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_screw_from_json(g_json: *const c_char, out: *mut *mut ScrewlineScrew) -> ScrewlineStatus {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(g_json));
        match try_status!(parse::<ScrewJson>(text)).to_domain() {
            Ok(g) => {
                *out = Box::into_raw(Box::new(ScrewlineScrew(g)));
                ScrewlineStatus::Ok
            }
            Err(e) => fail(ScrewlineStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Evaluates `g(t)`.
///
/// # Safety
/// `g` must be a live handle; `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_screw_eval(g: *const ScrewlineScrew, t: f64, re: *mut f64, im: *mut f64) -> ScrewlineStatus {
    guard(|| {
        non_null!(g, re, im);
        let v = eval_screw(&(*g).0, t);
        *re = v.re;
        *im = v.im;
        ScrewlineStatus::Ok
    })
}

/// Smallest eigenvalue of the Gram matrix of `G_g` on `n` equispaced points of
/// `[lo, hi]`; `pass` is set when it is at least `−tol`.
///
/// # Safety
/// `g` must be a live handle; `min_eigenvalue` and `pass` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_screw_pd_check(
    g: *const ScrewlineScrew,
    lo: f64,
    hi: f64,
    n: usize,
    tol: f64,
    min_eigenvalue: *mut f64,
    pass: *mut bool,
) -> ScrewlineStatus {
    guard(|| {
        non_null!(g, min_eigenvalue, pass);
        if n == 0 || !(lo < hi) || !(tol >= 0.0) {
            return fail(ScrewlineStatus::InvalidInput, "need n > 0, lo < hi and tol >= 0");
        }
        let r = pd_check(&(*g).0, &uniform_grid(lo, hi, n), tol);
        *min_eigenvalue = r.min_eigenvalue;
        *pass = r.pass;
        ScrewlineStatus::Ok
    })
}

/// Releases a screw-function handle.
///
/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn screwline_screw_free(g: *mut ScrewlineScrew) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs the checks of `example` (`"g0"`, `"pw"` or `"appendix"`). A report is
/// produced even when checks fail; inspect it with [`screwline_report_pass`].
/// `r` and `trunc` only affect `"pw"`.
///
/// # Safety
/// `example` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_pipeline(
    example: *const c_char,
    seed: u64,
    r: f64,
    trunc: usize,
    out: *mut *mut ScrewlineReport,
) -> ScrewlineStatus {
    guard(|| {
        non_null!(out);
        let name = try_status!(read_str(example));
        let opts = PipelineOptions { seed, r, trunc, ..PipelineOptions::default() };
        let rep = match name {
            "g0" => run_g0(&opts),
            "pw" => run_pw(&opts),
            "appendix" => run_appendix(&opts),
            other => return fail(ScrewlineStatus::InvalidInput, format!("unknown example `{other}`")),
        };
        *out = Box::into_raw(Box::new(ScrewlineReport(rep)));
        ScrewlineStatus::Ok
    })
}

/// Whether every check of `rep` passed; false for null.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn screwline_report_pass(rep: *const ScrewlineReport) -> bool {
    rep.as_ref().is_some_and(|r| r.0.pass)
}

/// Number of checks in `rep`; 0 for null.
///
/// # Safety
/// `rep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn screwline_report_check_count(rep: *const ScrewlineReport) -> usize {
    rep.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Serializes `rep` as JSON. The string must be released with [`screwline_string_free`].
///
/// # Safety
/// `rep` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn screwline_report_to_json(rep: *const ScrewlineReport, out: *mut *mut c_char) -> ScrewlineStatus {
    guard(|| {
        non_null!(rep, out);
        write_string(out, json::to_string(&(*rep).0))
    })
}

/// Releases a report handle.
///
/// # Safety
/// `rep` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn screwline_report_free(rep: *mut ScrewlineReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}
