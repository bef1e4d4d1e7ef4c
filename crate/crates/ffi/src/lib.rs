//! C ABI for the engine: opaque handles, integer status codes, and UTF-8
//! strings. Every function is safe to call with null pointers (it reports
//! `SPX_STATUS_NULL_ARGUMENT`); strings returned through out-parameters are
//! owned by the caller and must be released with `spx_string_free`.

use spindex::config::{parse_config, CommandName};
use spindex::exec::{build_job, execute, verification_failed, Job};
use spindex::report::{emit_report, Format};
use spindex::rootdata::{build_root_system, RootDatum};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::sync::Arc;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpxStatus {
    SpxOk = 0,
    SpxNullArgument = 1,
    SpxInvalidUtf8 = 2,
    /// Config parse/validation failure (CLI exit code 1).
    SpxConfigError = 3,
    /// Mathematical precondition violation (CLI exit code 2).
    SpxMathError = 4,
    /// A verification command found a mismatch (CLI exit code 3).
    SpxVerifyFailed = 5,
    SpxInternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &spindex::Error) -> SpxStatus {
    match err.exit_code() {
        1 => SpxStatus::SpxConfigError,
        3 => SpxStatus::SpxVerifyFailed,
        _ => SpxStatus::SpxMathError,
    }
}

/// An opaque root-system handle.
pub struct SpxRootDatum {
    inner: Arc<RootDatum>,
}

/// An opaque parsed-and-built job handle.
pub struct SpxJob {
    job: Job,
}

/// Crate version as a static string; do not free.
#[no_mangle]
pub extern "C" fn spx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The last error message on this thread, or null when none was recorded.
/// The returned string must be freed with `spx_string_free`.
#[no_mangle]
pub extern "C" fn spx_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must have been returned by a function of this library and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn spx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, SpxStatus> {
    if ptr.is_null() {
        return Err(SpxStatus::SpxNullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_last_error("argument is not valid UTF-8");
        SpxStatus::SpxInvalidUtf8
    })
}

/// Builds a root datum for a type label (`A1`, `A1xA1`, `A2`, `B2`).
///
/// # Safety
/// `label` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spx_root_datum_new(
    label: *const c_char,
    out: *mut *mut SpxRootDatum,
) -> SpxStatus {
    if out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let label = match unsafe { read_utf8(label) } {
        Ok(s) => s,
        Err(st) => return st,
    };
    match build_root_system(label) {
        Ok(rd) => {
            let handle = Box::new(SpxRootDatum { inner: rd });
            unsafe { *out = Box::into_raw(handle) };
            SpxStatus::SpxOk
        }
        Err(e) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn spx_root_datum_rank(
    rd: *const SpxRootDatum,
    out: *mut u32,
) -> SpxStatus {
    if rd.is_null() || out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let rd = unsafe { &*rd };
    unsafe { *out = rd.inner.rank as u32 };
    SpxStatus::SpxOk
}

/// # Safety
/// `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn spx_root_datum_positive_roots(
    rd: *const SpxRootDatum,
    out: *mut u32,
) -> SpxStatus {
    if rd.is_null() || out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let rd = unsafe { &*rd };
    unsafe { *out = rd.inner.positive_roots.len() as u32 };
    SpxStatus::SpxOk
}

/// # Safety
/// `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn spx_root_datum_weyl_order(
    rd: *const SpxRootDatum,
    out: *mut u32,
) -> SpxStatus {
    if rd.is_null() || out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let rd = unsafe { &*rd };
    unsafe { *out = rd.inner.weyl.len() as u32 };
    SpxStatus::SpxOk
}

/// # Safety
/// `rd` must come from `spx_root_datum_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn spx_root_datum_free(rd: *mut SpxRootDatum) {
    if !rd.is_null() {
        drop(unsafe { Box::from_raw(rd) });
    }
}

/// Parses a job configuration (the same INI grammar as the CLI) and builds
/// the algebra, modules and window behind an opaque handle.
///
/// # Safety
/// `config` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spx_job_parse(
    config: *const c_char,
    out: *mut *mut SpxJob,
) -> SpxStatus {
    if out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let text = match unsafe { read_utf8(config) } {
        Ok(s) => s,
        Err(st) => return st,
    };
    let cfg = match parse_config(text) {
        Ok(c) => c,
        Err(e) => {
            set_last_error(&e.to_string());
            return status_of(&e);
        }
    };
    match build_job(cfg) {
        Ok(job) => {
            unsafe { *out = Box::into_raw(Box::new(SpxJob { job })) };
            SpxStatus::SpxOk
        }
        Err(e) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// The command name the job will run; static string, do not free.
///
/// # Safety
/// `job` must be a live handle from `spx_job_parse`.
#[no_mangle]
pub unsafe extern "C" fn spx_job_command(job: *const SpxJob) -> *const c_char {
    if job.is_null() {
        return std::ptr::null();
    }
    let name: &'static str = match unsafe { &(*job).job }.cfg.command {
        CommandName::Describe => "describe\0",
        CommandName::Cohomology => "cohomology\0",
        CommandName::Dirac => "dirac\0",
        CommandName::Index => "index\0",
        CommandName::Pair => "pair\0",
        CommandName::Verify => "verify\0",
    };
    name.as_ptr() as *const c_char
}

/// Runs a job and returns the rendered report through `out`.
/// `format`: 0 = CSV, 1 = JSON-lines. `parallel` bounds the worker count
/// without changing output bytes. Returns `SPX_VERIFY_FAILED` (with the
/// output still written) when a verification command found a mismatch.
///
/// # Safety
/// `job` must be a live handle from `spx_job_parse`; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spx_job_run(
    job: *const SpxJob,
    format: c_int,
    parallel: u32,
    out: *mut *mut c_char,
) -> SpxStatus {
    if job.is_null() || out.is_null() {
        return SpxStatus::SpxNullArgument;
    }
    let fmt = match format {
        0 => Format::Csv,
        1 => Format::Jsonl,
        _ => {
            set_last_error("format must be 0 (csv) or 1 (jsonl)");
            return SpxStatus::SpxConfigError;
        }
    };
    let job = unsafe { &(*job).job };
    match execute(job, parallel.max(1) as usize) {
        Ok(records) => {
            let text = emit_report(&records, fmt);
            let c = CString::new(text).unwrap_or_default();
            unsafe { *out = c.into_raw() };
            if verification_failed(&records) {
                set_last_error("verification mismatch");
                SpxStatus::SpxVerifyFailed
            } else {
                SpxStatus::SpxOk
            }
        }
        Err(e) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// # Safety
/// `job` must come from `spx_job_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn spx_job_free(job: *mut SpxJob) {
    if !job.is_null() {
        drop(unsafe { Box::from_raw(job) });
    }
}
