//! C interface to `toric-ci`.
//!
//! Instances are opaque handles created by `toric_ci_instance_from_rows` or
//! `toric_ci_instance_parse` and released with `toric_ci_instance_free`.
//! Every fallible call returns a `ToricCiStatus`; on failure the message is
//! available from `toric_ci_last_error` on the same thread until the next call.
//! Strings returned through `char **` out-parameters are owned by the caller and
//! must be released with `toric_ci_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_ci::gluing::{is_ci_cone_with, is_complete_intersection_with, SearchOptions};
use toric_ci::report::{analyze, AnalyzeOptions};
use toric_ci::toric::OracleConfig;
use toric_ci::{cone, io, Error, GeneratorSet, IntVector};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToricCiStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    InvalidArgument = 1,
    /// Malformed or unsupported input, including non-pointed cones.
    Input = 2,
    /// A work or size limit was hit.
    Budget = 3,
    /// The library panicked; the handle involved should not be reused.
    Internal = 4,
}

/// Opaque generator set.
pub struct ToricCiInstance {
    gens: GeneratorSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ToricCiStatus {
    match e {
        Error::BudgetExceeded(_) | Error::TooManyGenerators { .. } => ToricCiStatus::Budget,
        Error::Internal(_) => ToricCiStatus::Internal,
        _ => ToricCiStatus::Input,
    }
}

enum Fail {
    Arg(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ToricCiStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ToricCiStatus::Ok,
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg.to_owned());
            ToricCiStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            ToricCiStatus::Internal
        }
    }
}

unsafe fn instance<'a>(p: *const ToricCiInstance) -> Result<&'a GeneratorSet, Fail> {
    p.as_ref().map(|i| &i.gens).ok_or(Fail::Arg("instance is null"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Arg("output pointer is null"));
    }
    out.write(v);
    Ok(())
}

fn search(max_gens: usize) -> SearchOptions {
    if max_gens == 0 {
        SearchOptions::default()
    } else {
        SearchOptions { max_gens }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Builds an instance from `rows × cols` integers in row-major order.
///
/// # Safety
/// `data` must point to `rows * cols` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_instance_from_rows(
    data: *const i64,
    rows: usize,
    cols: usize,
    out: *mut *mut ToricCiInstance,
) -> ToricCiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Arg("output pointer is null"));
        }
        out.write(ptr::null_mut());
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput.into());
        }
        if data.is_null() {
            return Err(Fail::Arg("data is null"));
        }
        let len = rows.checked_mul(cols).ok_or(Fail::Arg("rows * cols overflows"))?;
        let flat = std::slice::from_raw_parts(data, len);
        let gens = GeneratorSet::new(flat.chunks(cols).map(IntVector::from_i64s).collect())?;
        out.write(Box::into_raw(Box::new(ToricCiInstance { gens })));
        Ok(())
    })
}

/// Parses an instance in the text or JSON instance format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_instance_parse(
    text: *const c_char,
    out: *mut *mut ToricCiInstance,
) -> ToricCiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Arg("output pointer is null"));
        }
        out.write(ptr::null_mut());
        if text.is_null() {
            return Err(Fail::Arg("text is null"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| Fail::Arg("text is not UTF-8"))?;
        let gens = io::parse_str(s)?.to_generator_set()?;
        out.write(Box::into_raw(Box::new(ToricCiInstance { gens })));
        Ok(())
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_instance_free(inst: *mut ToricCiInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_instance_generators(inst: *const ToricCiInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.gens.len())
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_instance_ambient(inst: *const ToricCiInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.gens.ambient())
}

/// Decides whether the semigroup is a complete intersection.
/// `max_gens` of 0 selects the default limit.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_is_ci(
    inst: *const ToricCiInstance,
    max_gens: usize,
    out: *mut bool,
) -> ToricCiStatus {
    guard(|| {
        let a = instance(inst)?;
        let d = is_complete_intersection_with(a, search(max_gens))?;
        write(out, d.verdict)
    })
}

/// Decides whether the cone is a complete intersection cone.
/// `max_gens` of 0 selects the default limit.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_is_ci_cone(
    inst: *const ToricCiInstance,
    max_gens: usize,
    out: *mut bool,
) -> ToricCiStatus {
    guard(|| {
        let a = instance(inst)?;
        let d = is_ci_cone_with(a, search(max_gens))?;
        write(out, d.verdict)
    })
}

/// Number of extreme rays of the cone.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_extreme_ray_count(
    inst: *const ToricCiInstance,
    out: *mut usize,
) -> ToricCiStatus {
    guard(|| {
        let a = instance(inst)?;
        write(out, cone::extreme_rays(a)?.len())
    })
}

/// Full analysis report as canonical JSON. With `oracle` set the toric-ideal
/// oracle runs under its default limits.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_analyze_json(
    inst: *const ToricCiInstance,
    oracle: bool,
    out: *mut *mut c_char,
) -> ToricCiStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Arg("output pointer is null"));
        }
        out.write(ptr::null_mut());
        let a = instance(inst)?;
        let opts = AnalyzeOptions {
            oracle: oracle.then(OracleConfig::default),
            ..AnalyzeOptions::default()
        };
        out.write(into_c_string(analyze(a, &opts)?.to_json()));
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn toric_ci_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn toric_ci_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn toric_ci_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_statuses() {
        assert_eq!(status_of(&Error::NotPointed), ToricCiStatus::Input);
        assert_eq!(status_of(&Error::BudgetExceeded("x".into())), ToricCiStatus::Budget);
        assert_eq!(status_of(&Error::TooManyGenerators { got: 3, limit: 2 }), ToricCiStatus::Budget);
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, ToricCiStatus::Internal);
        let msg = unsafe { CStr::from_ptr(toric_ci_last_error()) };
        assert!(msg.to_str().unwrap().contains("boom"));
    }
}
