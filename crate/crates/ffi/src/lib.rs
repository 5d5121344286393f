//! C interface to `qchihara`.
//!
//! Every fallible function returns a [`QchStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`qch_last_error_message`] on the same thread. Objects are opaque
//! handles released by their `_free` function; strings returned to the
//! caller are released with [`qch_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_int, size_t};
use qchihara::discrete::{solve_weights, DiscreteMeasure, DiscreteParams};
use qchihara::families::{asc_poly, b_poly, hermite_poly};
use qchihara::measures::{density_asc, density_mu, density_qhermite, poisson_mehler, TruncationPolicy};
use qchihara::suites::{run_all, run_suite, Suite, SuiteConfig};
use qchihara::{Assignment, Error, MultiPoly, Var};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QchStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Argument outside the documented range, or a string that is not UTF-8.
    InvalidArgument = 2,
    /// Parameters outside the domain of the requested object.
    Domain = 3,
    /// An iteration or quadrature did not converge.
    Convergence = 4,
    /// A linear system was singular.
    Singular = 5,
    /// Exact arithmetic failed where it must not (division with remainder).
    Arithmetic = 6,
    /// A verification suite ran and at least one check failed.
    CheckFailed = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QchStatus, msg: impl Into<String>) -> QchStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> QchStatus {
    let status = match e {
        Error::Domain(_) | Error::NonFinite => QchStatus::Domain,
        Error::Precondition(_) | Error::UnassignedVariable(_) => QchStatus::InvalidArgument,
        Error::Convergence(_) => QchStatus::Convergence,
        Error::Singular => QchStatus::Singular,
        Error::InexactDivision | Error::DivisionByZero => QchStatus::Arithmetic,
    };
    fail(status, e.to_string())
}

/// Run `f`, converting panics into `Internal`.
fn guard(f: impl FnOnce() -> QchStatus) -> QchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QchStatus::Internal, "panic inside qchihara"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------- polynomials

/// Exact polynomial over the rationals in the variables `q, x, a, b, c, rho, y`.
pub struct QchPoly(MultiPoly);

/// Variable order used by [`qch_poly_eval`].
pub const QCH_NVARS: usize = 7;

fn boxed_poly(p: MultiPoly, out: *mut *mut QchPoly) -> QchStatus {
    if out.is_null() {
        return fail(QchStatus::NullPointer, "out is null");
    }
    // SAFETY: checked non-null; the caller provides a writable slot.
    unsafe { *out = Box::into_raw(Box::new(QchPoly(p))) };
    QchStatus::Ok
}

/// Which polynomial family [`qch_poly_family`] builds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QchFamily {
    /// `H_n(x|q)`
    Hermite = 0,
    /// `B_n(x|q)`
    B = 1,
    /// `p_n(x|q,a,b)` with symbolic `a`, `b`.
    AlSalamChihara = 2,
}

/// Degree-`n` member of `family`, exact in its symbols.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_family(family: QchFamily, n: u32, out: *mut *mut QchPoly) -> QchStatus {
    guard(|| {
        let n = n as usize;
        let p = match family {
            QchFamily::Hermite => hermite_poly(n),
            QchFamily::B => b_poly(n),
            QchFamily::AlSalamChihara => asc_poly(n, &MultiPoly::var(Var::A), &MultiPoly::var(Var::B)),
        };
        boxed_poly(p, out)
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_mul(a: *const QchPoly, b: *const QchPoly, out: *mut *mut QchPoly) -> QchStatus {
    guard(|| match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => boxed_poly(&a.0 * &b.0, out),
        _ => fail(QchStatus::NullPointer, "null polynomial handle"),
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_sub(a: *const QchPoly, b: *const QchPoly, out: *mut *mut QchPoly) -> QchStatus {
    guard(|| match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => boxed_poly(&a.0 - &b.0, out),
        _ => fail(QchStatus::NullPointer, "null polynomial handle"),
    })
}

/// Writes 1 to `out` if `p` is the zero polynomial, else 0.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_is_zero(p: *const QchPoly, out: *mut c_int) -> QchStatus {
    match (p.as_ref(), out.as_mut()) {
        (Some(p), Some(out)) => {
            *out = c_int::from(p.0.is_zero());
            QchStatus::Ok
        }
        _ => fail(QchStatus::NullPointer, "null argument"),
    }
}

/// Canonical text form, e.g. `-q^2 + x^2`. Free with [`qch_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_render(p: *const QchPoly, out: *mut *mut c_char) -> QchStatus {
    guard(|| match (p.as_ref(), out.as_mut()) {
        (Some(p), Some(out)) => {
            *out = into_c_string(p.0.render());
            QchStatus::Ok
        }
        _ => fail(QchStatus::NullPointer, "null argument"),
    })
}

/// Evaluate at `values[0..7]`, in the order `q, x, a, b, c, rho, y`.
///
/// # Safety
/// `p` must be a live handle, `values` must point to 7 doubles and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_eval(p: *const QchPoly, values: *const f64, out: *mut f64) -> QchStatus {
    guard(|| {
        let (Some(p), false, Some(out)) = (p.as_ref(), values.is_null(), out.as_mut()) else {
            return fail(QchStatus::NullPointer, "null argument");
        };
        let vals = std::slice::from_raw_parts(values, QCH_NVARS);
        let mut env = Assignment::new();
        for (v, x) in Var::ALL.iter().zip(vals) {
            env.set(*v, *x);
        }
        match p.0.eval_f64(&env) {
            Ok(v) => {
                *out = v;
                QchStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qch_poly_free(p: *mut QchPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

// ------------------------------------------------------------------ densities

fn write_density(r: qchihara::Result<f64>, out: *mut f64) -> QchStatus {
    // SAFETY: callers pass through a pointer documented as writable.
    match (r, unsafe { out.as_mut() }) {
        (_, None) => fail(QchStatus::NullPointer, "out is null"),
        (Ok(v), Some(o)) => {
            *o = v;
            QchStatus::Ok
        }
        (Err(e), _) => from_error(e),
    }
}

/// q-Hermite weight at `x`; 0 outside the support. Needs `|q| < 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_density_qhermite(x: f64, q: f64, out: *mut f64) -> QchStatus {
    guard(|| write_density(density_qhermite(x, q, &TruncationPolicy::default()), out))
}

/// Density of `mu(dx|rho,y)`. Needs `|q| < 1`, `|rho| < 1`, `y^2(1-q) < 4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_density_mu(x: f64, rho: f64, y: f64, q: f64, out: *mut f64) -> QchStatus {
    guard(|| write_density(density_mu(x, rho, y, q, &TruncationPolicy::default()), out))
}

/// Al-Salam-Chihara weight. Needs `|q| < 1`, `0 < b < 1`, `a^2(1-q) < 4b`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_density_asc(x: f64, a: f64, b: f64, q: f64, out: *mut f64) -> QchStatus {
    guard(|| write_density(density_asc(x, a, b, q, &TruncationPolicy::default()), out))
}

/// Poisson-Mehler kernel from its product form.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_poisson_mehler(x: f64, y: f64, rho: f64, q: f64, out: *mut f64) -> QchStatus {
    guard(|| write_density(poisson_mehler(x, y, rho, q, &TruncationPolicy::default()), out))
}

// ----------------------------------------------------------- discrete measure

/// Discrete solution for `q > 1`, `rho = +-q^(-m/2)`.
pub struct QchDiscreteMeasure(DiscreteMeasure);

/// Build the `(m+1)`-point measure; `negative_rho != 0` selects `rho < 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qch_discrete_measure_new(
    q: f64,
    m: u32,
    y: f64,
    negative_rho: c_int,
    out: *mut *mut QchDiscreteMeasure,
) -> QchStatus {
    guard(|| {
        if out.is_null() {
            return fail(QchStatus::NullPointer, "out is null");
        }
        let built = DiscreteParams::new(q, m as usize, y, negative_rho != 0).and_then(|p| solve_weights(&p));
        match built {
            Ok(mu) => {
                *out = Box::into_raw(Box::new(QchDiscreteMeasure(mu)));
                QchStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of support points, or 0 for a null handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qch_discrete_measure_len(h: *const QchDiscreteMeasure) -> size_t {
    h.as_ref().map_or(0, |h| h.0.len())
}

/// Copy support points and weights into caller buffers of length `len`,
/// which must be at least [`qch_discrete_measure_len`].
///
/// # Safety
/// `h` must be a live handle; `support` and `weights` must each hold `len`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn qch_discrete_measure_copy(
    h: *const QchDiscreteMeasure,
    support: *mut f64,
    weights: *mut f64,
    len: size_t,
) -> QchStatus {
    let Some(h) = h.as_ref() else {
        return fail(QchStatus::NullPointer, "null measure handle");
    };
    if support.is_null() || weights.is_null() {
        return fail(QchStatus::NullPointer, "null buffer");
    }
    let n = h.0.len();
    if len < n {
        return fail(QchStatus::InvalidArgument, format!("buffers hold {len} values, need {n}"));
    }
    ptr::copy_nonoverlapping(h.0.support.as_ptr(), support, n);
    ptr::copy_nonoverlapping(h.0.weights.as_ptr(), weights, n);
    QchStatus::Ok
}

/// JSON form of the measure. Free with [`qch_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_discrete_measure_to_json(h: *const QchDiscreteMeasure, out: *mut *mut c_char) -> QchStatus {
    guard(|| match (h.as_ref(), out.as_mut()) {
        (Some(h), Some(out)) => match serde_json::to_string(&h.0) {
            Ok(s) => {
                *out = into_c_string(s);
                QchStatus::Ok
            }
            Err(e) => fail(QchStatus::Internal, e.to_string()),
        },
        _ => fail(QchStatus::NullPointer, "null argument"),
    })
}

/// # Safety
/// `h` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qch_discrete_measure_free(h: *mut QchDiscreteMeasure) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

// ------------------------------------------------------------------- suites

/// Run a verification suite (`"identities"`, `"hankel"`, `"measures"`,
/// `"discrete"` or `"all"`) and return its records as a JSON array.
/// `n_max <= 0` keeps the default bounds. Returns `CheckFailed` when the
/// suite ran but some check failed; `json_out` is filled in either case.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `json_out` writable.
#[no_mangle]
pub unsafe extern "C" fn qch_verify_suite(suite: *const c_char, n_max: i64, json_out: *mut *mut c_char) -> QchStatus {
    guard(|| {
        if suite.is_null() || json_out.is_null() {
            return fail(QchStatus::NullPointer, "null argument");
        }
        let Ok(name) = CStr::from_ptr(suite).to_str() else {
            return fail(QchStatus::InvalidArgument, "suite name is not UTF-8");
        };
        let cfg = SuiteConfig { n_max: (n_max > 0).then_some(n_max as usize), ..SuiteConfig::default() };
        let records = match (name, Suite::from_name(name)) {
            ("all", _) => run_all(&cfg),
            (_, Some(s)) => run_suite(s, &cfg),
            _ => return fail(QchStatus::InvalidArgument, format!("unknown suite '{name}'")),
        };
        let records = match records {
            Ok(r) => r,
            Err(e) => return from_error(e),
        };
        match serde_json::to_string(&records) {
            Ok(s) => *json_out = into_c_string(s),
            Err(e) => return fail(QchStatus::Internal, e.to_string()),
        }
        if records.iter().all(|r| r.passed()) {
            QchStatus::Ok
        } else {
            let first = records.iter().find(|r| !r.passed()).map(|r| r.check_id.clone()).unwrap_or_default();
            fail(QchStatus::CheckFailed, format!("check failed: {first}"))
        }
    })
}
