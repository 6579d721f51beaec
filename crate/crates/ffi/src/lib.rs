//! C ABI for railyard.
//!
//! Objects are opaque handles created by `ry_*_new`/`ry_*_parse`/`ry_compile`
//! and released with the matching `ry_*_free`. Fallible calls return a
//! `RyStatus`; on failure `ry_last_error_message` describes the error for the
//! calling thread. Strings returned through out-parameters are owned by the
//! caller and must be released with `ry_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use railyard::frontends::regex::regex_source_to_diagram;
use railyard::layout::{parse_layout, print_layout, top_level_well_formed, width};
use railyard::pipeline::{compile, min_content, LayoutParams};
use railyard::render::{render_svg, RenderStyle};
use railyard::{parse_diagram, Diagram, Layout, LayoutError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    TargetTooSmall = 4,
    IllFormed = 5,
    InvalidArgument = 6,
    EmptyLanguage = 7,
    Panic = 99,
}

/// A parsed diagram.
pub struct RyDiagram {
    inner: Diagram,
}

/// Layout parameters; starts from the defaults.
pub struct RyParams {
    inner: LayoutParams,
}

/// A top-level well-formed layout.
pub struct RyLayout {
    inner: Layout,
    params: LayoutParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Failure = (RyStatus, String);

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RyStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            RyStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RyStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((RyStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (RyStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| (RyStatus::NullPointer, "null handle".into()))
}

unsafe fn handle_mut<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| (RyStatus::NullPointer, "null handle".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err((RyStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn layout_failure(e: LayoutError) -> Failure {
    let status = match e {
        LayoutError::TargetTooSmall { .. } | LayoutError::NoFeasibleWrap { .. } => RyStatus::TargetTooSmall,
        LayoutError::EmptyLanguage => RyStatus::EmptyLanguage,
        LayoutError::InvalidParams(_) => RyStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| (RyStatus::InvalidArgument, e.to_string()))
}

/// Parses the s-expression diagram syntax.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_diagram_parse(text_ptr: *const c_char, out: *mut *mut RyDiagram) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let src = text(text_ptr)?;
        let d = parse_diagram(src).map_err(|e| (RyStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(RyDiagram { inner: d }));
        Ok(())
    })
}

/// Parses a regular expression and translates it to a diagram.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_regex_parse(text_ptr: *const c_char, out: *mut *mut RyDiagram) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let src = text(text_ptr)?;
        let d = regex_source_to_diagram(src)
            .map_err(|e| (RyStatus::ParseError, e.to_string()))?
            .map_err(layout_failure)?;
        *out = Box::into_raw(Box::new(RyDiagram { inner: d }));
        Ok(())
    })
}

/// Prints a diagram in its s-expression syntax.
///
/// # Safety
/// `d` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_diagram_to_sexpr(d: *const RyDiagram, out: *mut *mut c_char) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let d = handle(d)?;
        *out = to_c_string(d.inner.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `d` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ry_diagram_free(d: *mut RyDiagram) {
    if !d.is_null() {
        let _ = panic::catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(d))));
    }
}

#[no_mangle]
pub extern "C" fn ry_params_new() -> *mut RyParams {
    panic::catch_unwind(|| Box::into_raw(Box::new(RyParams { inner: LayoutParams::default() })))
        .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ry_params_free(p: *mut RyParams) {
    if !p.is_null() {
        let _ = panic::catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(p))));
    }
}

unsafe fn set_number(p: *mut RyParams, v: f64, set: impl FnOnce(&mut LayoutParams, f64)) -> RyStatus {
    guard(|| {
        let p = handle_mut(p)?;
        let mut next = p.inner.clone();
        set(&mut next, v);
        next.validate().map_err(|e| (RyStatus::InvalidArgument, e))?;
        p.inner = next;
        Ok(())
    })
}

unsafe fn set_named<T: serde::de::DeserializeOwned>(
    p: *mut RyParams,
    name: *const c_char,
    set: impl FnOnce(&mut LayoutParams, T),
) -> RyStatus {
    guard(|| {
        let p = handle_mut(p)?;
        let name = text(name)?;
        let v: T = serde_json::from_value(serde_json::Value::String(name.to_string()))
            .map_err(|e| (RyStatus::InvalidArgument, e.to_string()))?;
        set(&mut p.inner, v);
        Ok(())
    })
}

/// # Safety
/// `p` must be a live params handle.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_width(p: *mut RyParams, width: f64) -> RyStatus {
    set_number(p, width, |lp, v| lp.target_width = v)
}

/// # Safety
/// `p` must be a live params handle.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_gap(p: *mut RyParams, gap: f64) -> RyStatus {
    set_number(p, gap, |lp, v| lp.gap = v)
}

/// # Safety
/// `p` must be a live params handle.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_flex_absorb(p: *mut RyParams, flex_absorb: f64) -> RyStatus {
    set_number(p, flex_absorb, |lp, v| lp.flex_absorb = v)
}

/// `"local"` or `"global"`.
///
/// # Safety
/// `p` must be a live params handle and `mode` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_wrap(p: *mut RyParams, mode: *const c_char) -> RyStatus {
    set_named(p, mode, |lp, v| lp.wrap_mode = v)
}

/// `"top"`, `"center"`, `"bottom"` or `"baseline"`.
///
/// # Safety
/// `p` must be a live params handle and `policy` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_align(p: *mut RyParams, policy: *const c_char) -> RyStatus {
    set_named(p, policy, |lp, v| lp.align_items = v)
}

/// `"start"`, `"end"`, `"center"`, `"space-between"`, `"space-around"` or `"space-evenly"`.
///
/// # Safety
/// `p` must be a live params handle and `policy` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ry_params_set_justify(p: *mut RyParams, policy: *const c_char) -> RyStatus {
    set_named(p, policy, |lp, v| lp.justify_content = v)
}

/// Narrowest target width the diagram can be compiled at.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_min_content(d: *const RyDiagram, p: *const RyParams, out: *mut f64) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let (d, p) = (handle(d)?, handle(p)?);
        *out = min_content(&d.inner, &p.inner);
        Ok(())
    })
}

/// Compiles a diagram at the params' target width.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_compile(d: *const RyDiagram, p: *const RyParams, out: *mut *mut RyLayout) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let (d, p) = (handle(d)?, handle(p)?);
        let c = compile(&d.inner, &p.inner).map_err(layout_failure)?;
        *out = Box::into_raw(Box::new(RyLayout { inner: c.layout, params: p.inner.clone() }));
        Ok(())
    })
}

/// Parses a layout s-expression; fails with `RY_STATUS_ILL_FORMED` unless it is top-level well-formed.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_layout_parse(text_ptr: *const c_char, out: *mut *mut RyLayout) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let src = text(text_ptr)?;
        let l = parse_layout(src).map_err(|e| (RyStatus::ParseError, e.to_string()))?;
        let params = LayoutParams::default();
        let report = top_level_well_formed(&l, &params.style);
        if !report.is_ok() {
            return Err((RyStatus::IllFormed, report.to_string()));
        }
        *out = Box::into_raw(Box::new(RyLayout { inner: l, params }));
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ry_layout_free(l: *mut RyLayout) {
    if !l.is_null() {
        let _ = panic::catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(l))));
    }
}

/// # Safety
/// `l` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ry_layout_width(l: *const RyLayout, out: *mut f64) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let l = handle(l)?;
        *out = width(&l.inner, &l.params.style);
        Ok(())
    })
}

/// # Safety
/// `l` must be live; `out` must be a valid pointer. Free the result with `ry_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ry_layout_render_svg(l: *const RyLayout, out: *mut *mut c_char) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let l = handle(l)?;
        let svg = render_svg(&l.inner, &RenderStyle::with_style(l.params.style.clone()))
            .map_err(|r| (RyStatus::IllFormed, r.to_string()))?;
        *out = to_c_string(svg)?;
        Ok(())
    })
}

/// # Safety
/// `l` must be live; `out` must be a valid pointer. Free the result with `ry_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ry_layout_to_sexpr(l: *const RyLayout, out: *mut *mut c_char) -> RyStatus {
    guard(|| {
        out_ptr(out)?;
        let l = handle(l)?;
        *out = to_c_string(print_layout(&l.inner))?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ry_string_free(s: *mut c_char) {
    if !s.is_null() {
        let _ = panic::catch_unwind(AssertUnwindSafe(|| drop(CString::from_raw(s))));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ry_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
