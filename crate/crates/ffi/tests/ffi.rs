use std::ffi::{CStr, CString};
use std::ptr;

use jokerlab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(jl_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn module(name: &str) -> *mut JlModule {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { jl_module_builtin(name.as_ptr(), &mut m) },
        JlStatus::Ok
    );
    m
}

#[test]
fn builtin_w5_is_endotrivial() {
    let m = module("W5");
    let mut dim = 0;
    let mut e = false;
    unsafe {
        assert_eq!(jl_module_dim(m, &mut dim), JlStatus::Ok);
        assert_eq!(jl_module_is_endotrivial(m, &mut e), JlStatus::Ok);
        jl_module_free(m);
    }
    assert_eq!(dim, 5);
    assert!(e);
}

#[test]
fn omega_four_of_k_is_stably_k() {
    let k = module("k");
    let mut s = ptr::null_mut();
    let mut iso = false;
    unsafe {
        assert_eq!(jl_module_syzygy(k, 4, &mut s), JlStatus::Ok);
        assert_eq!(jl_module_stable_iso(s, k, &mut iso), JlStatus::Ok);
        jl_module_free(s);
        jl_module_free(k);
    }
    assert!(iso);
}

#[test]
fn unknown_module_reports_valid_names() {
    let name = CString::new("W7").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { jl_module_builtin(name.as_ptr(), &mut m) },
        JlStatus::UnknownName
    );
    assert!(m.is_null());
    assert!(last_error().contains("W5"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { jl_module_builtin(ptr::null(), &mut m) },
        JlStatus::NullPointer
    );
    let mut dim = 0;
    assert_eq!(
        unsafe { jl_module_dim(ptr::null(), &mut dim) },
        JlStatus::NullPointer
    );
    unsafe { jl_module_free(ptr::null_mut()) };
    unsafe { jl_string_free(ptr::null_mut()) };
}

#[test]
fn module_from_json() {
    let json = CString::new(r#"{"field":"f4","group":"q8","generators":{"i":"1 0 0; 1 1 0; 0 1 1","j":"1 0 0; w 1 0; 0 w2 1"}}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { jl_module_from_json(json.as_ptr(), &mut m) },
        JlStatus::Ok
    );
    let mut dim = 0;
    unsafe {
        jl_module_dim(m, &mut dim);
        jl_module_free(m);
    }
    assert_eq!(dim, 3);

    let bad =
        CString::new(r#"{"field":"f4","group":"q8","generators":{"i":"1 1; 0 1","j":"w 0; 0 w"}}"#)
            .unwrap();
    assert_eq!(
        unsafe { jl_module_from_json(bad.as_ptr(), &mut m) },
        JlStatus::Computation
    );
    assert!(last_error().contains("violated"));
}

#[test]
fn teichmuller_digits_of_i() {
    let e = CString::new("i").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { jl_teichmuller_digits(e.as_ptr(), 3, &mut s) },
        JlStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { jl_string_free(s) };
    assert_eq!(text, "1, 1, w");
}

#[test]
fn betti_numbers() {
    let mut out = [0usize; 5];
    assert_eq!(
        unsafe { jl_ext_betti(4, out.as_mut_ptr(), out.len()) },
        JlStatus::Ok
    );
    assert_eq!(out, [1, 2, 2, 1, 1]);
    assert_eq!(
        unsafe { jl_ext_betti(8, out.as_mut_ptr(), out.len()) },
        JlStatus::InvalidArgument
    );
}

#[test]
fn report_round_trip() {
    let filter = CString::new("padic").unwrap();
    let mut r = ptr::null_mut();
    let mut failures = 99;
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(jl_verify_paper(filter.as_ptr(), &mut r), JlStatus::Ok);
        assert_eq!(jl_report_failures(r, &mut failures), JlStatus::Ok);
        assert_eq!(jl_report_json(r, &mut s), JlStatus::Ok);
    }
    let json: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe {
        jl_string_free(s);
        jl_report_free(r);
    }
    assert_eq!(failures, 0);
    assert_eq!(json["summary"]["total"], 2);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/jokerlab.h");
    for name in [
        "jl_module_builtin",
        "jl_module_from_json",
        "jl_module_dim",
        "jl_module_is_endotrivial",
        "jl_module_syzygy",
        "jl_module_stable_iso",
        "jl_module_free",
        "jl_teichmuller_digits",
        "jl_ext_betti",
        "jl_verify_paper",
        "jl_report_failures",
        "jl_report_json",
        "jl_report_free",
        "jl_string_free",
        "jl_last_error_message",
        "typedef struct JlModule JlModule",
        "JL_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
