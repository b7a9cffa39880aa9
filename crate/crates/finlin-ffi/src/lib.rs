//! C ABI for the finlin toolkit. All functions are exported with C linkage
//! and operate on opaque handles; strings returned by this library are
//! heap-allocated and must be released with [`finlin_string_free`]. Error
//! details for the most recent failing call on the current thread are
//! available through [`finlin_last_error`].

use finlin::io::{parse_file, run, InputDocument, Report, RunOptions};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

/// Status codes mirroring the CLI exit-code contract, plus argument errors.
pub const FINLIN_PASS: i32 = 0;
pub const FINLIN_FAIL: i32 = 1;
pub const FINLIN_INCONCLUSIVE: i32 = 2;
pub const FINLIN_INPUT_ERROR: i32 = 3;
pub const FINLIN_NULL_ARGUMENT: i32 = 4;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Opaque report handle.
pub struct FinlinReport {
    inner: Report,
}

/// Opaque parsed-document handle.
pub struct FinlinDocument {
    inner: InputDocument,
}

unsafe fn cstr_arg(ptr: *const c_char) -> Option<String> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok().map(str::to_string)
}

fn leak_string(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("output contained an interior NUL").unwrap())
        .into_raw()
}

/// Message describing the most recent error on this thread, or NULL.
/// The returned string must be freed with `finlin_string_free`.
#[no_mangle]
pub extern "C" fn finlin_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by a finlin function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn finlin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses and validates a document from a file on disk. Returns NULL on
/// failure; consult `finlin_last_error`.
///
/// # Safety
/// `path` must be a valid NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn finlin_document_parse(path: *const c_char) -> *mut FinlinDocument {
    clear_error();
    let Some(path) = (unsafe { cstr_arg(path) }) else {
        set_error("path argument is NULL or not UTF-8".into());
        return ptr::null_mut();
    };
    match parse_file(&PathBuf::from(path)) {
        Ok(doc) => Box::into_raw(Box::new(FinlinDocument { inner: doc })),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// The document kind: "algebra", "module", "bimodule", "hopf", "diagram"
/// or "suite". Free with `finlin_string_free`.
///
/// # Safety
/// `doc` must be a live handle from `finlin_document_parse`.
#[no_mangle]
pub unsafe extern "C" fn finlin_document_kind(doc: *const FinlinDocument) -> *mut c_char {
    if doc.is_null() {
        set_error("document handle is NULL".into());
        return ptr::null_mut();
    }
    leak_string(unsafe { &*doc }.inner.kind().to_string())
}

/// Canonical serialization of a parsed document. Free with
/// `finlin_string_free`.
///
/// # Safety
/// `doc` must be a live handle from `finlin_document_parse`.
#[no_mangle]
pub unsafe extern "C" fn finlin_document_serialize(doc: *const FinlinDocument) -> *mut c_char {
    if doc.is_null() {
        set_error("document handle is NULL".into());
        return ptr::null_mut();
    }
    leak_string(finlin::io::serialize(&unsafe { &*doc }.inner))
}

/// Releases a document handle.
///
/// # Safety
/// `doc` must be a handle from `finlin_document_parse`, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn finlin_document_free(doc: *mut FinlinDocument) {
    if !doc.is_null() {
        drop(unsafe { Box::from_raw(doc) });
    }
}

/// Runs a verifier command over input files.
///
/// `command` is one of the CLI verbs (check, classify, nakayama, ew,
/// peterweyl, radford, serre, unimodular, restriction, suite); `paths` is
/// an array of `n_paths` NUL-terminated file paths in command order.
/// On success `*out_report` is set and the verdict code (0 pass, 1 fail,
/// 2 inconclusive) is returned. On input errors no report is produced and
/// `FINLIN_INPUT_ERROR` is returned.
///
/// # Safety
/// `paths` must point to `n_paths` valid C strings; `out_report`, when
/// non-NULL, must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn finlin_run(
    command: *const c_char,
    paths: *const *const c_char,
    n_paths: usize,
    seed: u64,
    budget: u64,
    out_report: *mut *mut FinlinReport,
) -> i32 {
    clear_error();
    if !out_report.is_null() {
        unsafe { *out_report = ptr::null_mut() };
    }
    let Some(command) = (unsafe { cstr_arg(command) }) else {
        set_error("command argument is NULL or not UTF-8".into());
        return FINLIN_NULL_ARGUMENT;
    };
    if paths.is_null() && n_paths > 0 {
        set_error("paths argument is NULL".into());
        return FINLIN_NULL_ARGUMENT;
    }
    let mut inputs = Vec::with_capacity(n_paths);
    for i in 0..n_paths {
        let p = unsafe { *paths.add(i) };
        let Some(p) = (unsafe { cstr_arg(p) }) else {
            set_error(format!("path {i} is NULL or not UTF-8"));
            return FINLIN_NULL_ARGUMENT;
        };
        inputs.push(PathBuf::from(p));
    }
    let opts = RunOptions { seed, budget, ..Default::default() };
    match run(&command, &inputs, &opts) {
        Ok(report) => {
            let code = report.verdict().exit_code();
            if !out_report.is_null() {
                unsafe { *out_report = Box::into_raw(Box::new(FinlinReport { inner: report })) };
            }
            code
        }
        Err(e) => {
            set_error(e.to_string());
            FINLIN_INPUT_ERROR
        }
    }
}

/// Verdict code of a report: 0 pass, 1 fail, 2 inconclusive.
///
/// # Safety
/// `report` must be a live handle from `finlin_run`.
#[no_mangle]
pub unsafe extern "C" fn finlin_report_verdict(report: *const FinlinReport) -> i32 {
    if report.is_null() {
        set_error("report handle is NULL".into());
        return FINLIN_NULL_ARGUMENT;
    }
    unsafe { &*report }.inner.verdict().exit_code()
}

/// Machine-readable JSON form of a report. Witness payloads are omitted
/// when `quiet` is nonzero. Free with `finlin_string_free`.
///
/// # Safety
/// `report` must be a live handle from `finlin_run`.
#[no_mangle]
pub unsafe extern "C" fn finlin_report_json(report: *const FinlinReport, quiet: i32) -> *mut c_char {
    if report.is_null() {
        set_error("report handle is NULL".into());
        return ptr::null_mut();
    }
    let v = unsafe { &*report }.inner.to_json(quiet != 0);
    leak_string(serde_json::to_string_pretty(&v).expect("report serializes"))
}

/// Human-readable text form of a report. Free with `finlin_string_free`.
///
/// # Safety
/// `report` must be a live handle from `finlin_run`.
#[no_mangle]
pub unsafe extern "C" fn finlin_report_text(report: *const FinlinReport) -> *mut c_char {
    if report.is_null() {
        set_error("report handle is NULL".into());
        return ptr::null_mut();
    }
    leak_string(unsafe { &*report }.inner.to_text())
}

/// Re-verifies every witness certificate embedded in a report JSON string.
/// Returns 0 when all certificates check out, 1 when one fails, and
/// `FINLIN_INPUT_ERROR` on malformed input.
///
/// # Safety
/// `report_json` must be a valid NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn finlin_report_reverify(report_json: *const c_char) -> i32 {
    clear_error();
    let Some(text) = (unsafe { cstr_arg(report_json) }) else {
        set_error("report_json is NULL or not UTF-8".into());
        return FINLIN_NULL_ARGUMENT;
    };
    let v: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            set_error(format!("report JSON: {e}"));
            return FINLIN_INPUT_ERROR;
        }
    };
    match Report::reverify_json(&v) {
        Ok(true) => FINLIN_PASS,
        Ok(false) => FINLIN_FAIL,
        Err(e) => {
            set_error(e.to_string());
            FINLIN_INPUT_ERROR
        }
    }
}

/// Releases a report handle.
///
/// # Safety
/// `report` must be a handle from `finlin_run`, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn finlin_report_free(report: *mut FinlinReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn finlin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
