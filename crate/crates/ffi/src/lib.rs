//! C ABI over `tatekit`.
//!
//! Every fallible function returns a [`TkStatus`]; on anything other than
//! `TK_STATUS_OK` a description is available from [`tk_last_error_message`] on the
//! same thread. Strings handed out by the library are released with
//! [`tk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tatekit::invariants::{self, CiStatus, Route};
use tatekit::report::{Report, ReportBounds};
use tatekit::{Error, Presentation};

/// Opaque handle to a parsed presentation.
pub struct TkPresentation(Presentation);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    InvalidConfig = 4,
    BoundExceeded = 5,
    OutsideWindow = 6,
    InsufficientCertification = 7,
    PreconditionFailed = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkRoute {
    MinimalModel = 0,
    AcyclicClosure = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkCiStatus {
    No = 0,
    Yes = 1,
    Uncertified = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkCommand {
    Deviations = 0,
    CiCheck = 1,
    AqRanks = 2,
    Betti = 3,
    Poincare = 4,
    KoszulH1 = 5,
}

/// Marks a deviation the chosen route does not compute.
pub const TK_ABSENT: u64 = u64::MAX;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> TkStatus {
    match e {
        Error::Config(_) => TkStatus::InvalidConfig,
        Error::BoundExceeded { .. } => TkStatus::BoundExceeded,
        Error::OutsideWindow { .. } => TkStatus::OutsideWindow,
        Error::InsufficientCertification(_) => TkStatus::InsufficientCertification,
        Error::Precondition(_) | Error::WitnessRejected(_) => TkStatus::PreconditionFailed,
        _ => TkStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (TkStatus, String)>) -> TkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            TkStatus::Internal
        }
    }
}

fn lib<T>(r: tatekit::Result<T>) -> Result<T, (TkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn presentation<'a>(p: *const TkPresentation) -> Result<&'a Presentation, (TkStatus, String)> {
    p.as_ref().map(|p| &p.0).ok_or((TkStatus::NullPointer, "null presentation".into()))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (TkStatus, String)> {
    if s.is_null() {
        return Err((TkStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (TkStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn check_bounds(n: u32, d: u32) -> Result<(), (TkStatus, String)> {
    if n < 2 || d < 2 {
        return Err((TkStatus::InvalidConfig, format!("N and D must be at least 2 (got N = {n}, D = {d})")));
    }
    Ok(())
}

unsafe fn write_out(values: &[u64], out: *mut u64, len: usize) -> Result<(), (TkStatus, String)> {
    if out.is_null() {
        return Err((TkStatus::NullPointer, "null output buffer".into()));
    }
    if len < values.len() {
        return Err((TkStatus::BufferTooSmall, format!("output needs {} entries, got {len}", values.len())));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next call.
#[no_mangle]
pub extern "C" fn tk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a presentation document. On success `*out` owns a handle to be
/// released with `tk_presentation_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_presentation_from_json(json: *const c_char, out: *mut *mut TkPresentation) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err((TkStatus::NullPointer, "null output handle".into()));
        }
        let p = lib(Presentation::from_json(text(json)?))?;
        *out = Box::into_raw(Box::new(TkPresentation(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from `tk_presentation_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_presentation_free(p: *mut TkPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes `ε_1 .. ε_N` to `out[0] .. out[N-1]`; entries the route does not
/// compute are `TK_ABSENT`.
///
/// # Safety
/// `p` must be a live handle and `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn tk_deviations(
    p: *const TkPresentation,
    route: TkRoute,
    n: u32,
    d: u32,
    out: *mut u64,
    len: usize,
) -> TkStatus {
    guard(|| {
        let p = presentation(p)?;
        check_bounds(n, d)?;
        let route = match route {
            TkRoute::MinimalModel => Route::MinimalModel,
            TkRoute::AcyclicClosure => Route::AcyclicClosure,
        };
        let table = lib(invariants::deviations(p, n, d, route))?;
        let values: Vec<u64> = (1..=n).map(|k| table.get(k).map_or(TK_ABSENT, |c| c as u64)).collect();
        write_out(&values, out, len)
    })
}

/// Writes `b_0 .. b_N` to `out`, which needs `N + 1` entries.
///
/// # Safety
/// `p` must be a live handle and `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn tk_betti(p: *const TkPresentation, n: u32, d: u32, out: *mut u64, len: usize) -> TkStatus {
    guard(|| {
        let p = presentation(p)?;
        check_bounds(n, d)?;
        let values = lib(invariants::betti_numbers(p, n, d))?.values;
        write_out(&values, out, len)
    })
}

/// Complete-intersection verdict for the surjection from the base.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_ci_check(p: *const TkPresentation, d: u32, out: *mut TkCiStatus) -> TkStatus {
    guard(|| {
        let p = presentation(p)?;
        check_bounds(2, d)?;
        if out.is_null() {
            return Err((TkStatus::NullPointer, "null output".into()));
        }
        *out = match lib(invariants::ci_check(p, d))?.is_ci {
            CiStatus::Yes => TkCiStatus::Yes,
            CiStatus::No => TkCiStatus::No,
            CiStatus::Uncertified => TkCiStatus::Uncertified,
        };
        Ok(())
    })
}

/// Rank of `D_n` over the base. Fails with `TK_STATUS_OUTSIDE_WINDOW` where the
/// deviations do not determine it.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_aq_rank(p: *const TkPresentation, n: u32, d: u32, out: *mut u64) -> TkStatus {
    guard(|| {
        let p = presentation(p)?;
        check_bounds(n, d)?;
        if out.is_null() {
            return Err((TkStatus::NullPointer, "null output".into()));
        }
        *out = lib(invariants::aq_rank(p, n, d))? as u64;
        Ok(())
    })
}

/// The JSON report the command-line tool prints for `command`. On success
/// `*out` owns a string to be released with `tk_string_free`. `t` is only
/// read by `TK_COMMAND_POINCARE`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_report_json(
    p: *const TkPresentation,
    command: TkCommand,
    n: u32,
    d: u32,
    t: u32,
    out: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let p = presentation(p)?;
        check_bounds(n, d)?;
        if out.is_null() {
            return Err((TkStatus::NullPointer, "null output".into()));
        }
        let mut r = Report::with_bounds(ReportBounds { n: Some(n), d, t: None });
        match command {
            TkCommand::Deviations => {
                let route = if p.has_polynomial_base() { Route::AcyclicClosure } else { Route::MinimalModel };
                r.set_deviations(lib(invariants::deviations(p, n, d, route))?);
            }
            TkCommand::CiCheck => {
                r.bounds.n = None;
                r.ci = Some(lib(invariants::ci_check(p, d))?);
            }
            TkCommand::AqRanks => r.aq_ranks = Some(lib(invariants::aq_ranks(p, n, d))?),
            TkCommand::Betti => r.betti = Some(lib(invariants::betti_numbers(p, n, d))?.values),
            TkCommand::Poincare => {
                r.bounds = ReportBounds { n: None, d, t: Some(t) };
                let table = lib(invariants::deviations(p, t, d, Route::AcyclicClosure))?;
                r.poincare = Some(lib(invariants::poincare_from_deviations(&table, t))?.coefficients);
            }
            TkCommand::KoszulH1 => {
                r.bounds.n = None;
                r.koszul_h1 = Some(lib(invariants::koszul_h1(p, d))?);
            }
        }
        let json = CString::new(r.to_json()).map_err(|_| (TkStatus::Internal, "NUL in report".into()))?;
        *out = json.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
