use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hyperelliptic_ffi::*;

const CURVE: &str = r#"{"genus": 1, "field": "q", "lambda": ["0", "1"]}"#;
const A: &str = r#"{"p_even": ["2"], "p_odd": ["3"], "z": ["0"]}"#;
const B: &str = r#"{"p_even": ["0"], "p_odd": ["1"], "z": ["0"]}"#;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    hl_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = hl_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn curve() -> *mut HlCurve {
    let mut c = ptr::null_mut();
    assert_eq!(hl_curve_from_json(cstr(CURVE).as_ptr(), &mut c), HlStatus::Ok);
    c
}

unsafe fn point(c: *const HlCurve, json: &str) -> *mut HlPoint {
    let mut p = ptr::null_mut();
    assert_eq!(hl_point_from_json(c, cstr(json).as_ptr(), &mut p), HlStatus::Ok);
    p
}

#[test]
fn star_on_worked_pair() {
    unsafe {
        let c = curve();
        assert_eq!(hl_curve_genus(c), 1);
        let (a, b) = (point(c, A), point(c, B));
        let mut ab = ptr::null_mut();
        assert_eq!(hl_star(a, b, &mut ab), HlStatus::Ok);
        assert!(hl_last_error().is_null());
        let mut json = ptr::null_mut();
        assert_eq!(hl_point_to_json(ab, &mut json), HlStatus::Ok);
        assert_eq!(take_string(json), r#"{"p_even":["-1"],"p_odd":["0"],"z":["0"]}"#);
        for p in [a, b, ab] {
            hl_point_free(p);
        }
        hl_curve_free(c);
    }
}

#[test]
fn invert_anchor_and_cantor() {
    unsafe {
        let c = curve();
        let a = point(c, A);
        let mut abar = ptr::null_mut();
        assert_eq!(hl_invert(a, &mut abar), HlStatus::Ok);

        let mut anchored = ptr::null_mut();
        assert_eq!(hl_anchor(abar, &mut anchored), HlStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(hl_curve_to_json(anchored, &mut json), HlStatus::Ok);
        assert_eq!(take_string(json), r#"{"field":"q","genus":1,"lambda":["0","1"]}"#);

        assert_eq!(hl_cantor_add(c, a, abar, &mut json), HlStatus::Ok);
        assert_eq!(take_string(json), r#"{"divisor":{"u":["1"],"v":[]}}"#);
        assert_eq!(hl_cantor_add(c, a, a, &mut json), HlStatus::Ok);
        assert_eq!(take_string(json), r#"{"p_even":["0"],"p_odd":["1"],"z":["0"]}"#);

        hl_point_free(a);
        hl_point_free(abar);
        hl_curve_free(anchored);
        hl_curve_free(c);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let c = curve();
        let a = point(c, A);
        let mut out = ptr::null_mut();
        assert_eq!(hl_star(a, a, &mut out), HlStatus::Degenerate);
        assert!(last_error().contains("degenerate"));
        assert!(out.is_null());

        let mut p = ptr::null_mut();
        let off = cstr(r#"{"p_even": ["1"], "p_odd": ["1"], "z": ["0"]}"#);
        assert_eq!(hl_point_from_json(c, off.as_ptr(), &mut p), HlStatus::AnchorMismatch);
        assert_eq!(hl_point_from_json(c, cstr("{").as_ptr(), &mut p), HlStatus::Parse);
        assert_eq!(hl_point_from_json(c, ptr::null(), &mut p), HlStatus::NullArgument);
        assert_eq!(hl_star(ptr::null(), a, &mut out), HlStatus::NullArgument);
        assert_eq!(hl_star(a, a, ptr::null_mut()), HlStatus::Degenerate);

        let mut bad = ptr::null_mut();
        let even = cstr(r#"{"genus": 1, "field": "fp:2", "lambda": [0, 1]}"#);
        assert_eq!(hl_curve_from_json(even.as_ptr(), &mut bad), HlStatus::InvalidInput);
        assert_eq!(hl_curve_genus(ptr::null()), 0);

        hl_point_free(a);
        hl_curve_free(c);
        hl_point_free(ptr::null_mut());
        hl_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hyperelliptic.h")).unwrap();
    for name in [
        "hl_last_error",
        "hl_string_free",
        "hl_curve_from_json",
        "hl_curve_to_json",
        "hl_curve_genus",
        "hl_curve_free",
        "hl_point_from_json",
        "hl_point_to_json",
        "hl_point_free",
        "hl_star",
        "hl_invert",
        "hl_anchor",
        "hl_cantor_add",
        "HL_STATUS_DEGENERATE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
