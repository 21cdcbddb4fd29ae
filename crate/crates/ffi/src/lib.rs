//! C ABI over the `hyperelliptic` crate.
//!
//! Curves and points cross the boundary as opaque handles created from the
//! same JSON documents the CLI reads. Every call returns an [`HlStatus`]; on
//! failure a message is available from [`hl_last_error`] until the next call
//! on the same thread. Strings returned by the library are released with
//! [`hl_string_free`], handles with their matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperelliptic::cantor::{cantor_add, from_mumford, to_mumford};
use hyperelliptic::groupoid::{anchor, anchor_curve, invert, star, CurveParams, GroupoidPoint};
use hyperelliptic::json::{curve_from_json, curve_to_json, divisor_to_json, parse_document, point_from_json, point_to_json};
use hyperelliptic::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    FieldMismatch = 5,
    AnchorMismatch = 6,
    Degenerate = 7,
    NotOnJacobian = 8,
    Arithmetic = 9,
    Panic = 10,
}

/// A curve `y^2 = f(x)` with its field.
pub struct HlCurve(CurveParams);

/// A point of `C^{3g}`.
pub struct HlPoint(GroupoidPoint);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> HlStatus {
    match e {
        Error::Parse(_) => HlStatus::Parse,
        Error::FieldMismatch(..) => HlStatus::FieldMismatch,
        Error::AnchorMismatch => HlStatus::AnchorMismatch,
        Error::DegenerateConfiguration(_) => HlStatus::Degenerate,
        Error::NotOnJacobian => HlStatus::NotOnJacobian,
        Error::NonzeroRemainder
        | Error::NotMonicDegree3g
        | Error::DivisionByZero
        | Error::DivisionByZeroPoly
        | Error::SingularMatrix => HlStatus::Arithmetic,
        _ => HlStatus::InvalidInput,
    }
}

struct Fail(HlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HlStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(HlStatus::NullArgument, format!("{name} is null")))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HlStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(HlStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HlStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HlStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or null.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn hl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a curve object `{"genus", "field", "lambda"}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_from_json(json: *const c_char, out: *mut *mut HlCurve) -> HlStatus {
    guard(|| {
        let c = curve_from_json(&parse_document(read_str(json, "json")?)?)?;
        put(out, HlCurve(c))
    })
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_to_json(curve: *const HlCurve, out: *mut *mut c_char) -> HlStatus {
    guard(|| put_string(out, curve_to_json(&borrow(curve, "curve")?.0).to_string()))
}

/// Genus of the curve, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_genus(curve: *const HlCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.genus())
}

/// # Safety
/// `curve` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_curve_free(curve: *mut HlCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Parses a point object over `curve`'s field and checks it lies over `curve`.
///
/// # Safety
/// `curve` must be a live handle, `json` a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hl_point_from_json(
    curve: *const HlCurve,
    json: *const c_char,
    out: *mut *mut HlPoint,
) -> HlStatus {
    guard(|| {
        let c = &borrow(curve, "curve")?.0;
        let a = point_from_json(c.field(), &parse_document(read_str(json, "json")?)?)?;
        if a.genus() != c.genus() || anchor(&a) != (c.lambda1().to_vec(), c.lambda2().to_vec()) {
            return Err(Error::AnchorMismatch.into());
        }
        put(out, HlPoint(a))
    })
}

/// # Safety
/// `point` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_point_to_json(point: *const HlPoint, out: *mut *mut c_char) -> HlStatus {
    guard(|| put_string(out, point_to_json(&borrow(point, "point")?.0).to_string()))
}

/// # Safety
/// `point` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_point_free(point: *mut HlPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

/// `a * b`. Fails with [`HlStatus::Degenerate`] off the generic chart.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_star(a: *const HlPoint, b: *const HlPoint, out: *mut *mut HlPoint) -> HlStatus {
    guard(|| {
        let p = star(&borrow(a, "a")?.0, &borrow(b, "b")?.0)?;
        put(out, HlPoint(p))
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_invert(a: *const HlPoint, out: *mut *mut HlPoint) -> HlStatus {
    guard(|| put(out, HlPoint(invert(&borrow(a, "a")?.0))))
}

/// The curve a point lies over.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_anchor(a: *const HlPoint, out: *mut *mut HlCurve) -> HlStatus {
    guard(|| put(out, HlCurve(anchor_curve(&borrow(a, "a")?.0))))
}

/// Divisor-class sum by Cantor's algorithm, as JSON: a point object when the
/// result has full degree, otherwise `{"divisor": {"u": [...], "v": [...]}}`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hl_cantor_add(
    curve: *const HlCurve,
    a: *const HlPoint,
    b: *const HlPoint,
    out: *mut *mut c_char,
) -> HlStatus {
    guard(|| {
        let c = &borrow(curve, "curve")?.0;
        let d = cantor_add(&to_mumford(&borrow(a, "a")?.0, c)?, &to_mumford(&borrow(b, "b")?.0, c)?, c)?;
        let doc = match from_mumford(&d, c) {
            Ok(p) => point_to_json(&p).to_string(),
            Err(Error::NonGenericDivisor(..)) => format!("{{\"divisor\":{}}}", divisor_to_json(&d)),
            Err(e) => return Err(e.into()),
        };
        put_string(out, doc)
    })
}
