//! C interface to jokerlab. Every fallible function returns a `JlStatus`;
//! on failure `jl_last_error_message` describes the error for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use jokerlab::cohom::FreeResolution;
use jokerlab::gmod::{self, builtin, stable_iso, syzygy_n};
use jokerlab::morava::q8_elements;
use jokerlab::verify::{verify_paper, Report};
use jokerlab::{Error, FiniteField, FiniteGroup, GModule};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownName = 3,
    Parse = 4,
    InvalidArgument = 5,
    Computation = 6,
    Panic = 7,
}

/// An F4[G]-module.
pub struct JlModule(GModule);

/// A verification report.
pub struct JlReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

fn status_of(e: &Error) -> JlStatus {
    match e {
        Error::UnknownName { .. } => JlStatus::UnknownName,
        Error::Parse(_) | Error::Json(_) | Error::MalformedSpec(_) => JlStatus::Parse,
        Error::DimensionMismatch(_) | Error::InvalidField(_) | Error::InsufficientLength { .. } => {
            JlStatus::InvalidArgument
        }
        _ => JlStatus::Computation,
    }
}

type Outcome = Result<(), (JlStatus, String)>;

fn fail(status: JlStatus, msg: &str) -> (JlStatus, String) {
    (status, msg.to_string())
}

fn lib(e: Error) -> (JlStatus, String) {
    (status_of(&e), e.to_string())
}

fn guard(f: impl FnOnce() -> Outcome) -> JlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            JlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            JlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (JlStatus, String)> {
    if p.is_null() {
        return Err(fail(JlStatus::NullPointer, "null string argument"));
    }
    // SAFETY: the caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| fail(JlStatus::InvalidUtf8, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(fail(JlStatus::NullPointer, "null output pointer"));
    }
    // SAFETY: checked non-null; the caller owns the slot.
    unsafe { out.write(v) };
    Ok(())
}

unsafe fn module_ref<'a>(m: *const JlModule) -> Result<&'a GModule, (JlStatus, String)> {
    // SAFETY: handles come from this library and are live until freed.
    unsafe { m.as_ref() }
        .map(|m| &m.0)
        .ok_or_else(|| fail(JlStatus::NullPointer, "null module handle"))
}

/// A named F4[Q8]-module such as "W5" or "Jprime".
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_builtin(
    name: *const c_char,
    out: *mut *mut JlModule,
) -> JlStatus {
    guard(|| {
        let name = unsafe { read_str(name) }?;
        let m = builtin(name).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(JlModule(m)))) }
    })
}

/// Reads the JSON module-definition format {field, group, generators}.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_from_json(
    json: *const c_char,
    out: *mut *mut JlModule,
) -> JlStatus {
    guard(|| {
        let text = unsafe { read_str(json) }?;
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| (JlStatus::Parse, e.to_string()))?;
        let m = GModule::from_json(&value).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(JlModule(m)))) }
    })
}

/// # Safety
/// `m` must be a live module handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_dim(m: *const JlModule, out: *mut usize) -> JlStatus {
    guard(|| {
        let m = unsafe { module_ref(m) }?;
        unsafe { write_out(out, m.dim()) }
    })
}

/// # Safety
/// `m` must be a live module handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_is_endotrivial(m: *const JlModule, out: *mut bool) -> JlStatus {
    guard(|| {
        let m = unsafe { module_ref(m) }?;
        let e = gmod::endotrivial(m).map_err(lib)?;
        unsafe { write_out(out, e) }
    })
}

/// The n-th syzygy Omega^n M as a new handle.
///
/// # Safety
/// `m` must be a live module handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_syzygy(
    m: *const JlModule,
    n: usize,
    out: *mut *mut JlModule,
) -> JlStatus {
    guard(|| {
        let m = unsafe { module_ref(m) }?;
        let s = syzygy_n(m, n).map_err(lib)?;
        unsafe { write_out(out, Box::into_raw(Box::new(JlModule(s)))) }
    })
}

/// # Safety
/// `a`, `b` must be live module handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_module_stable_iso(
    a: *const JlModule,
    b: *const JlModule,
    out: *mut bool,
) -> JlStatus {
    guard(|| {
        let (a, b) = unsafe { (module_ref(a)?, module_ref(b)?) };
        let iso = stable_iso(a, b).map_err(lib)?;
        unsafe { write_out(out, iso) }
    })
}

/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jl_module_free(m: *mut JlModule) {
    if !m.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Comma-separated F4 residues of the first `n` Teichmuller digits of a Q8
/// element ("1", "-1", "i", ...). Free the string with `jl_string_free`.
///
/// # Safety
/// `element` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_teichmuller_digits(
    element: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> JlStatus {
    guard(|| {
        let name = unsafe { read_str(element) }?;
        let q8 = FiniteGroup::q8();
        let idx = q8.element(name).ok_or_else(|| {
            fail(
                JlStatus::UnknownName,
                &format!(
                    "unknown Q8 element `{name}` (valid: {})",
                    q8.names().join(", ")
                ),
            )
        })?;
        let m = (n as u32).div_ceil(2).max(3) + 1;
        let g = q8_elements(m).map_err(lib)?[idx];
        let digits = g.teichmuller_digits(n).map_err(lib)?;
        let text: Vec<String> = digits.residues().iter().map(ToString::to_string).collect();
        unsafe { write_out(out, into_c_string(text.join(", "))) }
    })
}

/// Betti numbers b_0..b_max_degree of Q8 over F4, written to `out` (which
/// must hold `max_degree + 1` entries).
///
/// # Safety
/// `out` must point to `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn jl_ext_betti(max_degree: usize, out: *mut usize, len: usize) -> JlStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(JlStatus::NullPointer, "null output buffer"));
        }
        if len < max_degree + 1 {
            return Err(fail(JlStatus::InvalidArgument, "output buffer too short"));
        }
        let res =
            FreeResolution::minimal(FiniteField::f4(), Arc::new(FiniteGroup::q8()), max_degree)
                .map_err(lib)?;
        // SAFETY: checked non-null with at least max_degree + 1 entries.
        let slots = unsafe { std::slice::from_raw_parts_mut(out, len) };
        slots[..=max_degree].copy_from_slice(&res.ranks()[..=max_degree]);
        Ok(())
    })
}

/// Runs the verification suite; `filter` may be null.
///
/// # Safety
/// `filter` must be null or nul-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jl_verify_paper(
    filter: *const c_char,
    out: *mut *mut JlReport,
) -> JlStatus {
    guard(|| {
        let filter = if filter.is_null() {
            None
        } else {
            Some(unsafe { read_str(filter) }?)
        };
        let r = verify_paper(filter);
        unsafe { write_out(out, Box::into_raw(Box::new(JlReport(r)))) }
    })
}

/// Number of failed checks.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_report_failures(r: *const JlReport, out: *mut usize) -> JlStatus {
    guard(|| {
        let r = unsafe { r.as_ref() }
            .ok_or_else(|| fail(JlStatus::NullPointer, "null report handle"))?;
        unsafe { write_out(out, r.0.summary.fail) }
    })
}

/// The report as JSON. Free the string with `jl_string_free`.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jl_report_json(r: *const JlReport, out: *mut *mut c_char) -> JlStatus {
    guard(|| {
        let r = unsafe { r.as_ref() }
            .ok_or_else(|| fail(JlStatus::NullPointer, "null report handle"))?;
        let text = serde_json::to_string(&r.0.to_json())
            .map_err(|e| (JlStatus::Computation, e.to_string()))?;
        unsafe { write_out(out, into_c_string(text)) }
    })
}

/// # Safety
/// `r` must be null or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jl_report_free(r: *mut JlReport) {
    if !r.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(r) });
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jl_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: created by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// The message for the last failed call on this thread, or "" after a
/// success. Valid until the next call on this thread; do not free.
#[no_mangle]
pub extern "C" fn jl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
