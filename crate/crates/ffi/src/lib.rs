//! C bindings for `jetbound`.
//!
//! Every function returns a [`JbStatus`]. On failure a message is stored in
//! a thread-local slot readable with [`jb_last_error`]. Strings handed out
//! by the library must be released with [`jb_string_free`]; handles with
//! their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jetbound::report::{run, run_pullback, Command, InputError, Problem, Report};
use jetbound::{JetSpace, PeelStrategy};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JbStatus {
    Ok = 0,
    /// A report was produced but at least one check failed.
    CheckFailed = 1,
    /// Malformed problem, expression or argument.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JbCommand {
    El = 0,
    RelEuler = 1,
    Green = 2,
    Check = 3,
}

impl From<JbCommand> for Command {
    fn from(c: JbCommand) -> Self {
        match c {
            JbCommand::El => Command::El,
            JbCommand::RelEuler => Command::RelEuler,
            JbCommand::Green => Command::Green,
            JbCommand::Check => Command::Check,
        }
    }
}

/// Opaque validated problem.
pub struct JbProblem {
    problem: Problem,
}

/// Opaque command result.
pub struct JbReport {
    report: Report,
    command: Command,
    space: JetSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(JbStatus);

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        set_error(e.to_string());
        Failure(JbStatus::InputError)
    }
}

impl From<jetbound::JetError> for Failure {
    fn from(e: jetbound::JetError) -> Self {
        InputError::from(e).into()
    }
}

fn guard(f: impl FnOnce() -> Result<JbStatus, Failure>) -> JbStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("internal panic");
            JbStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        set_error("null string argument");
        return Err(Failure(JbStatus::NullPointer));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        Failure(JbStatus::InvalidUtf8)
    })
}

fn non_null<T>(p: *const T) -> Result<(), Failure> {
    if p.is_null() {
        set_error("null handle or output pointer");
        return Err(Failure(JbStatus::NullPointer));
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn jb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn jb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse and validate a JSON problem file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jb_problem_from_json(
    json: *const c_char,
    out: *mut *mut JbProblem,
) -> JbStatus {
    guard(|| {
        non_null(out)?;
        *out = ptr::null_mut();
        let problem = Problem::from_json(read_str(json)?)?;
        *out = Box::into_raw(Box::new(JbProblem { problem }));
        Ok(JbStatus::Ok)
    })
}

/// Override the peel strategy: `"default"` or `"alternate"`.
///
/// # Safety
/// `problem` must be a live handle; `strategy` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jb_problem_set_strategy(
    problem: *mut JbProblem,
    strategy: *const c_char,
) -> JbStatus {
    guard(|| {
        non_null(problem)?;
        let s: PeelStrategy = read_str(strategy)?.parse().map_err(|e: String| {
            set_error(e);
            Failure(JbStatus::InputError)
        })?;
        (*problem).problem.options.strategy = s;
        Ok(JbStatus::Ok)
    })
}

/// Override the probe count and seed used by `JB_COMMAND_CHECK`.
///
/// # Safety
/// `problem` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_problem_set_sampling(
    problem: *mut JbProblem,
    probes: usize,
    seed: u64,
) -> JbStatus {
    guard(|| {
        non_null(problem)?;
        let o = &mut (*problem).problem.options;
        o.probes = probes;
        o.seed = seed;
        Ok(JbStatus::Ok)
    })
}

/// # Safety
/// `problem` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jb_problem_free(problem: *mut JbProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Run a command. A report is stored in `out` for both `JB_STATUS_OK` and
/// `JB_STATUS_CHECK_FAILED`.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jb_run(
    problem: *const JbProblem,
    command: JbCommand,
    out: *mut *mut JbReport,
) -> JbStatus {
    guard(|| {
        non_null(problem)?;
        non_null(out)?;
        *out = ptr::null_mut();
        let p = &(*problem).problem;
        let command = Command::from(command);
        let report = run(command, p)?;
        let passed = report.passed();
        if !passed {
            set_error("one or more checks failed");
        }
        *out = Box::into_raw(Box::new(JbReport {
            report,
            command,
            space: p.space,
        }));
        Ok(if passed {
            JbStatus::Ok
        } else {
            JbStatus::CheckFailed
        })
    })
}

/// The report as JSON (same bytes as `jetbound --format json`). Returns
/// NULL for a NULL handle.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_json(report: *const JbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.report.to_json()),
        None => ptr::null_mut(),
    }
}

/// The report as human-readable text.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_text(report: *const JbReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.report.to_text(r.command, &r.space)),
        None => ptr::null_mut(),
    }
}

/// Number of Euler-Lagrange components.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_el_len(report: *const JbReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.el.len())
}

/// Euler-Lagrange component `index` (0-based), or NULL when out of range.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_el(report: *const JbReport, index: usize) -> *mut c_char {
    match report.as_ref().and_then(|r| r.report.el.get(index)) {
        Some(s) => into_c_string(s.clone()),
        None => ptr::null_mut(),
    }
}

/// Number of natural boundary condition entries.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_theta_len(report: *const JbReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.theta.len())
}

/// Boundary condition entry `index`: writes `k` and `i` and returns the
/// expression, or NULL when out of range.
///
/// # Safety
/// `report` must be NULL or a live handle; `k` and `i` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jb_report_theta(
    report: *const JbReport,
    index: usize,
    k: *mut usize,
    i: *mut u32,
) -> *mut c_char {
    let Some(t) = report.as_ref().and_then(|r| r.report.theta.get(index)) else {
        return ptr::null_mut();
    };
    if !k.is_null() {
        *k = t.k;
    }
    if !i.is_null() {
        *i = t.i;
    }
    into_c_string(t.expr.clone())
}

/// Whether every check in the report passed.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jb_report_passed(report: *const JbReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.passed())
}

/// # Safety
/// `report` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jb_report_free(report: *mut JbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Pull an interior expression back to the boundary `x_n = 0`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jb_pullback(
    n: usize,
    m: usize,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> JbStatus {
    guard(|| {
        non_null(out)?;
        *out = ptr::null_mut();
        let space = JetSpace::new(n, m)?;
        let r = run_pullback(&space, read_str(expr)?)?;
        *out = into_c_string(r.pullback);
        Ok(JbStatus::Ok)
    })
}
