//! C ABI for the measurement post-processing library.
//!
//! Conventions: objects parsed from JSON become opaque handles freed with
//! their matching `_free` function; structured results come back as
//! heap-allocated JSON strings freed with `po_string_free`; every fallible
//! call returns a `PoStatus`, and a failure stores a message retrievable
//! with `po_last_error` (thread-local, valid until the next failing call on
//! the same thread). All functions are panic-safe: a caught panic reports
//! `PoStatus::Panic` instead of unwinding across the boundary.

use postorder::gpt::Evm;
use postorder::json::{verdict_payload, EnsembleDto, EvmDto, PosetDto};
use postorder::poset::{
    order_dimension, standard_example, verify_main1, DimensionResult, FinitePoset,
};
use postorder::postproc::{compare, pg};
use serde_json::json;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input parsed but failed validation, or did not parse at all.
    InvalidInput = 3,
    /// The computation itself reported an error.
    Domain = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// Opaque handle to a validated measurement.
pub struct PoEvm(Evm);

/// Opaque handle to a validated finite poset.
pub struct PoPoset(FinitePoset);

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("").expect("empty string has no interior nul"));
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|cell| {
        *cell.borrow_mut() =
            CString::new(sanitized).expect("nul bytes were just replaced");
    });
}

/// The message of the most recent failure on this thread. Borrowed: valid
/// until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn po_last_error() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ptr())
}

/// The library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn po_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned through an out-parameter.
///
/// # Safety
/// `s` must be a pointer previously returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn po_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn utf8_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, PoStatus> {
    if ptr.is_null() {
        set_error(&format!("{name} must not be null"));
        return Err(PoStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{name} must be valid UTF-8"));
        PoStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> PoStatus {
    if out.is_null() {
        set_error("output pointer must not be null");
        return PoStatus::NullArgument;
    }
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PoStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior nul byte");
            PoStatus::Domain
        }
    }
}

fn guarded(body: impl FnOnce() -> PoStatus) -> PoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the library boundary");
            PoStatus::Panic
        }
    }
}

/// Parses and validates a measurement from its JSON schema. Returns null on
/// failure (see `po_last_error`); free with `po_evm_free`.
///
/// # Safety
/// `json` must be null or point to a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn po_evm_parse(json: *const c_char) -> *mut PoEvm {
    let mut handle: *mut PoEvm = std::ptr::null_mut();
    guarded(|| {
        let text = match utf8_arg(json, "json") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let dto: EvmDto = match serde_json::from_str(text) {
            Ok(d) => d,
            Err(e) => {
                set_error(&e.to_string());
                return PoStatus::InvalidInput;
            }
        };
        match dto.to_evm() {
            Ok(evm) => {
                handle = Box::into_raw(Box::new(PoEvm(evm)));
                PoStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                PoStatus::InvalidInput
            }
        }
    });
    handle
}

/// Frees a measurement handle.
///
/// # Safety
/// `m` must be a handle from `po_evm_parse`, or null; never freed twice.
#[no_mangle]
pub unsafe extern "C" fn po_evm_free(m: *mut PoEvm) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of outcomes of a measurement; 0 for a null handle.
///
/// # Safety
/// `m` must be a live handle from `po_evm_parse`, or null.
#[no_mangle]
pub unsafe extern "C" fn po_evm_outcomes(m: *const PoEvm) -> usize {
    if m.is_null() {
        return 0;
    }
    (*m).0.outcomes()
}

/// Dimension of the classical state space carrying the measurement; 0 for a
/// null handle.
///
/// # Safety
/// `m` must be a live handle from `po_evm_parse`, or null.
#[no_mangle]
pub unsafe extern "C" fn po_evm_space_dim(m: *const PoEvm) -> usize {
    if m.is_null() {
        return 0;
    }
    (*m).0.space().dim()
}

/// Decides the post-processing order between two measurements. On success
/// writes the verdict report (JSON, same schema as the command-line tool)
/// to `out_json`; free it with `po_string_free`.
///
/// # Safety
/// `m` and `n` must be live handles; `out_json` must point to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn po_compare(
    m: *const PoEvm,
    n: *const PoEvm,
    out_json: *mut *mut c_char,
) -> PoStatus {
    guarded(|| {
        if m.is_null() || n.is_null() {
            set_error("measurement handles must not be null");
            return PoStatus::NullArgument;
        }
        match compare(&(*m).0, &(*n).0) {
            Ok(verdict) => write_string(out_json, verdict_payload(&verdict).to_string()),
            Err(e) => {
                set_error(&e.to_string());
                PoStatus::Domain
            }
        }
    })
}

/// Exact guessing probability of a JSON-encoded ensemble under a
/// measurement, written to `out_value` as a canonical "p/q" string; free it
/// with `po_string_free`.
///
/// # Safety
/// `ensemble_json` must be null or nul-terminated; `m` a live handle;
/// `out_value` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn po_pg(
    ensemble_json: *const c_char,
    m: *const PoEvm,
    out_value: *mut *mut c_char,
) -> PoStatus {
    guarded(|| {
        let text = match utf8_arg(ensemble_json, "ensemble_json") {
            Ok(t) => t,
            Err(status) => return status,
        };
        if m.is_null() {
            set_error("measurement handle must not be null");
            return PoStatus::NullArgument;
        }
        let ensemble = match serde_json::from_str::<EnsembleDto>(text)
            .map_err(|e| e.to_string())
            .and_then(|dto| dto.to_ensemble().map_err(|e| e.to_string()))
        {
            Ok(e) => e,
            Err(message) => {
                set_error(&message);
                return PoStatus::InvalidInput;
            }
        };
        match pg(&ensemble, &(*m).0) {
            Ok(value) => write_string(out_value, postorder::exact::format_rational(&value)),
            Err(e) => {
                set_error(&e.to_string());
                PoStatus::Domain
            }
        }
    })
}

/// Parses and validates a finite poset from its JSON schema. Returns null
/// on failure; free with `po_poset_free`.
///
/// # Safety
/// `json` must be null or point to a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn po_poset_parse(json: *const c_char) -> *mut PoPoset {
    let mut handle: *mut PoPoset = std::ptr::null_mut();
    guarded(|| {
        let text = match utf8_arg(json, "json") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<PosetDto>(text)
            .map_err(|e| e.to_string())
            .and_then(|dto| dto.to_poset().map_err(|e| e.to_string()))
        {
            Ok(p) => {
                handle = Box::into_raw(Box::new(PoPoset(p)));
                PoStatus::Ok
            }
            Err(message) => {
                set_error(&message);
                PoStatus::InvalidInput
            }
        }
    });
    handle
}

/// Frees a poset handle.
///
/// # Safety
/// `p` must be a handle from this library, or null; never freed twice.
#[no_mangle]
pub unsafe extern "C" fn po_poset_free(p: *mut PoPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of elements of a poset; 0 for a null handle.
///
/// # Safety
/// `p` must be a live handle, or null.
#[no_mangle]
pub unsafe extern "C" fn po_poset_len(p: *const PoPoset) -> usize {
    if p.is_null() {
        return 0;
    }
    (*p).0.len()
}

/// The 2n-element two-level poset whose order dimension is exactly n.
/// Returns null when n is out of range; free with `po_poset_free`.
#[no_mangle]
pub extern "C" fn po_standard_example(n: usize) -> *mut PoPoset {
    let mut handle: *mut PoPoset = std::ptr::null_mut();
    guarded(|| match standard_example(n) {
        Ok(p) => {
            handle = Box::into_raw(Box::new(PoPoset(p)));
            PoStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            PoStatus::InvalidInput
        }
    });
    handle
}

/// Exact order dimension with search bound `max_k`, written to
/// `out_dimension`. A poset needing more than `max_k` extensions reports
/// `Domain` (see `po_last_error`).
///
/// # Safety
/// `p` must be a live handle; `out_dimension` writable storage for one
/// `usize`.
#[no_mangle]
pub unsafe extern "C" fn po_poset_dimension(
    p: *const PoPoset,
    max_k: usize,
    out_dimension: *mut usize,
) -> PoStatus {
    guarded(|| {
        if p.is_null() || out_dimension.is_null() {
            set_error("poset handle and output pointer must not be null");
            return PoStatus::NullArgument;
        }
        match order_dimension(&(*p).0, max_k) {
            Ok(DimensionResult::Computed { dimension, .. }) => {
                *out_dimension = dimension;
                PoStatus::Ok
            }
            Ok(DimensionResult::ExceedsBound { max_k }) => {
                set_error(&format!("order dimension exceeds the search bound {max_k}"));
                PoStatus::Domain
            }
            Err(e) => {
                set_error(&e.to_string());
                PoStatus::Domain
            }
        }
    })
}

/// Hasse diagram of a poset in DOT syntax, written to `out_dot`; free it
/// with `po_string_free`.
///
/// # Safety
/// `p` must be a live handle; `out_dot` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn po_poset_dot(p: *const PoPoset, out_dot: *mut *mut c_char) -> PoStatus {
    guarded(|| {
        if p.is_null() {
            set_error("poset handle must not be null");
            return PoStatus::NullArgument;
        }
        write_string(out_dot, (*p).0.to_dot())
    })
}

/// Builds the 2n-measurement bit family, decides every pair exactly, and
/// verifies the comparison poset is the standard example with order
/// dimension n. Writes a JSON report to `out_json`; free it with
/// `po_string_free`. Cost grows steeply with n; n ≤ 4 stays fast.
///
/// # Safety
/// `out_json` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn po_main1(n: usize, out_json: *mut *mut c_char) -> PoStatus {
    guarded(|| match verify_main1(n) {
        Ok(report) => {
            let patterns: serde_json::Map<String, serde_json::Value> = report
                .patterns
                .iter()
                .map(|(name, count)| (name.to_string(), json!(count)))
                .collect();
            let payload = json!({
                "n": report.n,
                "comparisons": report.comparisons,
                "dimension": report.dimension,
                "patterns": patterns,
                "poset": PosetDto::from_poset(&report.poset),
            });
            write_string(out_json, payload.to_string())
        }
        Err(e) => {
            set_error(&e.to_string());
            PoStatus::Domain
        }
    })
}
