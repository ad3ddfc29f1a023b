//! C ABI for the lambdakit workbench.
//!
//! Terms are passed around as opaque `LkTerm` handles. Every function
//! is null-safe; fallible calls report an `LkStatus` and write results
//! through out pointers. Strings returned by the library are owned by
//! the caller and must be released with [`lk_string_free`]; terms with
//! [`lk_term_free`].

use lambdakit::boehm::{bt_compute, bt_render, BtFormat};
use lambdakit::combinatory::{compile, numeral_decode, numeral_encode};
use lambdakit::reduction::{beta_eta_eq, normalize, solvable, Outcome, TraceStatus};
use lambdakit::syntax::{parse, Term};
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// An opaque lambda term handle.
pub struct LkTerm(Term);

/// Status code for fallible calls.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text did not parse; see `lk_last_error`.
    ParseError = 3,
}

/// Tri-state answer of a fuel-bounded query.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LkVerdict {
    Positive = 0,
    Negative = 1,
    Unknown = 2,
}

/// Terminal status of a reduction run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LkReduction {
    NormalForm = 0,
    FuelExhausted = 1,
}

thread_local! {
    static LAST_ERROR: std::cell::RefCell<Option<CString>> =
        const { std::cell::RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Returns the message of the most recent error on this thread, or
/// null. The string is owned by the library; do not free it.
#[no_mangle]
pub extern "C" fn lk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Parses `text` into a term handle. With `allow_constants`, standard
/// combinator names (S, K, Theta, ...) are expanded.
#[no_mangle]
pub unsafe extern "C" fn lk_term_parse(
    text: *const c_char,
    allow_constants: bool,
    out_term: *mut *mut LkTerm,
) -> LkStatus {
    if text.is_null() || out_term.is_null() {
        return LkStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return LkStatus::InvalidUtf8;
    };
    match parse(text, allow_constants) {
        Ok(term) => {
            *out_term = Box::into_raw(Box::new(LkTerm(term)));
            LkStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            LkStatus::ParseError
        }
    }
}

/// Releases a term handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lk_term_free(term: *mut LkTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Prints a term with minimal parentheses. Returns a caller-owned
/// string, or null on a null handle.
#[no_mangle]
pub unsafe extern "C" fn lk_term_print(term: *const LkTerm) -> *mut c_char {
    let Some(term) = term.as_ref() else {
        return ptr::null_mut();
    };
    export_string(term.0.to_string())
}

/// Equality up to renaming of bound variables.
#[no_mangle]
pub unsafe extern "C" fn lk_term_alpha_eq(a: *const LkTerm, b: *const LkTerm) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0.alpha_eq(&b.0),
        _ => false,
    }
}

/// Reduces a term with the leftmost strategy for at most `fuel`
/// contractions. Writes the reduct into `out_term` and the number of
/// steps taken into `out_steps` (either may be null).
#[no_mangle]
pub unsafe extern "C" fn lk_normalize(
    term: *const LkTerm,
    fuel: u64,
    out_term: *mut *mut LkTerm,
    out_steps: *mut u64,
) -> LkReduction {
    let Some(term) = term.as_ref() else {
        return LkReduction::FuelExhausted;
    };
    let trace = normalize(&term.0, fuel);
    if !out_steps.is_null() {
        *out_steps = trace.steps.len() as u64;
    }
    if !out_term.is_null() {
        *out_term = Box::into_raw(Box::new(LkTerm(trace.final_term)));
    }
    match trace.status {
        TraceStatus::NormalForm => LkReduction::NormalForm,
        TraceStatus::FuelExhausted => LkReduction::FuelExhausted,
    }
}

/// Beta-eta convertibility through common normal forms within `fuel`.
#[no_mangle]
pub unsafe extern "C" fn lk_beta_eta_eq(
    a: *const LkTerm,
    b: *const LkTerm,
    fuel: u64,
) -> LkVerdict {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => match beta_eta_eq(&a.0, &b.0, fuel) {
            Outcome::Positive(_) => LkVerdict::Positive,
            Outcome::Negative => LkVerdict::Negative,
            Outcome::Unknown(_) => LkVerdict::Unknown,
        },
        _ => LkVerdict::Unknown,
    }
}

/// Solvability (existence of a head normal form) within `fuel`.
/// Never answers `Negative`.
#[no_mangle]
pub unsafe extern "C" fn lk_solvable(term: *const LkTerm, fuel: u64) -> LkVerdict {
    match term.as_ref() {
        Some(term) => match solvable(&term.0, fuel) {
            Outcome::Positive(_) => LkVerdict::Positive,
            Outcome::Negative => LkVerdict::Negative,
            Outcome::Unknown(_) => LkVerdict::Unknown,
        },
        None => LkVerdict::Unknown,
    }
}

/// Bracket abstraction to S/K/I, rendered in applicative notation.
/// Returns a caller-owned string, or null on a null handle.
#[no_mangle]
pub unsafe extern "C" fn lk_compile(term: *const LkTerm) -> *mut c_char {
    let Some(term) = term.as_ref() else {
        return ptr::null_mut();
    };
    export_string(compile(&term.0).to_string())
}

/// Böhm-tree approximant of a term as JSON (the same schema the CLI
/// emits). Returns a caller-owned string, or null on a null handle.
#[no_mangle]
pub unsafe extern "C" fn lk_bt_json(term: *const LkTerm, depth: u64, fuel: u64) -> *mut c_char {
    let Some(term) = term.as_ref() else {
        return ptr::null_mut();
    };
    export_string(bt_render(&bt_compute(&term.0, depth, fuel), BtFormat::Json))
}

/// Encodes a natural number as a standard numeral.
#[no_mangle]
pub extern "C" fn lk_numeral_encode(n: u64) -> *mut LkTerm {
    Box::into_raw(Box::new(LkTerm(numeral_encode(n))))
}

/// Reads a numeral back; on `Positive`, the value is written to
/// `out_value`.
#[no_mangle]
pub unsafe extern "C" fn lk_numeral_decode(
    term: *const LkTerm,
    fuel: u64,
    out_value: *mut u64,
) -> LkVerdict {
    let Some(term) = term.as_ref() else {
        return LkVerdict::Unknown;
    };
    match numeral_decode(&term.0, fuel) {
        Outcome::Positive(n) => {
            if !out_value.is_null() {
                *out_value = n;
            }
            LkVerdict::Positive
        }
        Outcome::Negative => LkVerdict::Negative,
        Outcome::Unknown(_) => LkVerdict::Unknown,
    }
}
