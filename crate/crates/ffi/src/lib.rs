//! C ABI for `hilbchow`.
//!
//! Every fallible function returns an [`HcStatus`]; on failure the message
//! is available from [`hc_last_error_message`] on the same thread. Handles
//! are opaque and released with their `_free` function; strings returned
//! through out-parameters are released with [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hilbchow::algebra::GradedSubmodule;
use hilbchow::assembly::labels::{check_relation_file, LabelFile};
use hilbchow::assembly::{equivariant_chow, RelationFile};
use hilbchow::fixed_points::{betti_bb, enumerate_fixed_points, tangent_representation};
use hilbchow::toric::ToricSurface;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Computation = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A smooth projective toric surface.
pub struct HcSurface {
    inner: ToricSurface,
}

/// The equivariant Chow ring of a Hilbert scheme of points, as a graded
/// submodule of the ring of tuples of polynomials on the fixed points.
pub struct HcChow {
    surface: ToricSurface,
    points: u32,
    module: GradedSubmodule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(HcStatus, String);

impl From<hilbchow::Error> for Failure {
    fn from(e: hilbchow::Error) -> Self {
        use hilbchow::Error as E;
        let status = match e {
            E::Invariant(_) | E::NonGeneric { .. } | E::Io(_) => HcStatus::Computation,
            _ => HcStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(HcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(HcStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(HcStatus::Computation, "output contains a NUL byte".into()))
}

unsafe fn write_list(
    values: &[usize],
    out: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> Result<(), Failure> {
    if len.is_null() {
        return Err(null());
    }
    *len = values.len();
    if values.len() > capacity {
        return Err(Failure(
            HcStatus::BufferTooSmall,
            format!("{} values needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

/// The message of the last failed call on this thread, or null. Valid
/// until the next call on this thread.
#[no_mangle]
pub extern "C" fn hc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a surface from a preset (`P2`, `P1xP1`, `F<a>`), a JSON list of
/// rays, or a path to a fan file.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_surface_new(spec: *const c_char, out: *mut *mut HcSurface) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = ToricSurface::resolve(text(spec)?)?;
        *out = Box::into_raw(Box::new(HcSurface { inner }));
        Ok(())
    })
}

/// # Safety
/// `surface` must be null or a handle from [`hc_surface_new`].
#[no_mangle]
pub unsafe extern "C" fn hc_surface_free(surface: *mut HcSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Number of torus-fixed points of the surface, or 0 for a null handle.
///
/// # Safety
/// `surface` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_surface_num_points(surface: *const HcSurface) -> usize {
    surface.as_ref().map_or(0, |s| s.inner.num_points())
}

/// The fixed points of the Hilbert scheme of `points` points as a JSON
/// array of `{id, parts, weights}`.
///
/// # Safety
/// `surface` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_fixed_points_json(
    surface: *const HcSurface,
    points: u32,
    out: *mut *mut c_char,
) -> HcStatus {
    guard(|| {
        let s = &surface.as_ref().ok_or_else(null)?.inner;
        if out.is_null() {
            return Err(null());
        }
        let mut records = Vec::new();
        for fp in enumerate_fixed_points(s, points) {
            records.push(serde_json::json!({
                "id": fp.id(s),
                "parts": fp.parts.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "weights": tangent_representation(s, &fp)?,
            }));
        }
        let json = serde_json::to_string(&records)
            .map_err(|e| Failure(HcStatus::Computation, e.to_string()))?;
        *out = c_string(json)?;
        Ok(())
    })
}

/// Betti numbers `b_0, b_2, …` counted from tangent weights at the fixed
/// points. Writes the length to `len` even when `capacity` is too small.
///
/// # Safety
/// `surface` must be a live handle, `values` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn hc_betti(
    surface: *const HcSurface,
    points: u32,
    values: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HcStatus {
    guard(|| {
        let s = &surface.as_ref().ok_or_else(null)?.inner;
        write_list(&betti_bb(s, points, None)?, values, capacity, len)
    })
}

/// Computes the equivariant Chow ring in degrees `0..=max_degree`.
///
/// # Safety
/// `surface` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_chow_new(
    surface: *const HcSurface,
    points: u32,
    max_degree: u32,
    out: *mut *mut HcChow,
) -> HcStatus {
    guard(|| {
        let s = &surface.as_ref().ok_or_else(null)?.inner;
        if out.is_null() {
            return Err(null());
        }
        let module = equivariant_chow(s, points, max_degree)?;
        *out = Box::into_raw(Box::new(HcChow {
            surface: s.clone(),
            points,
            module,
        }));
        Ok(())
    })
}

/// # Safety
/// `chow` must be null or a handle from [`hc_chow_new`].
#[no_mangle]
pub unsafe extern "C" fn hc_chow_free(chow: *mut HcChow) {
    if !chow.is_null() {
        drop(Box::from_raw(chow));
    }
}

/// Dimension over `Q` of the degree-`k` piece.
///
/// # Safety
/// `chow` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_chow_piece_dim(
    chow: *const HcChow,
    k: u32,
    out: *mut usize,
) -> HcStatus {
    guard(|| {
        let c = chow.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = *c.module.piece_dims().get(k as usize).ok_or_else(|| {
            Failure(
                HcStatus::InvalidInput,
                format!("degree {k} beyond the computed bound"),
            )
        })?;
        Ok(())
    })
}

/// Betti numbers of the ordinary Chow ring, from the computed module.
///
/// # Safety
/// As for [`hc_betti`].
#[no_mangle]
pub unsafe extern "C" fn hc_chow_betti(
    chow: *const HcChow,
    values: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HcStatus {
    guard(|| {
        let c = chow.as_ref().ok_or_else(null)?;
        write_list(&c.module.quotient_betti()?, values, capacity, len)
    })
}

/// The module as JSON, with bases of each piece as rational strings.
///
/// # Safety
/// `chow` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_chow_json(chow: *const HcChow, out: *mut *mut c_char) -> HcStatus {
    guard(|| {
        let c = chow.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let json = serde_json::to_string(&c.module.to_json())
            .map_err(|e| Failure(HcStatus::Computation, e.to_string()))?;
        *out = c_string(json)?;
        Ok(())
    })
}

/// Checks a relation file (JSON text) against the computed ring. A null
/// `labels_json` selects the bundled labels where they apply. `passed` is
/// set to whether every relation (in some reading) holds and the
/// relations cut out exactly the ring; `report` (optional) receives the
/// JSON report.
///
/// # Safety
/// `chow` must be a live handle, `relations_json` a NUL-terminated string,
/// `labels_json` null or NUL-terminated, `passed` valid, `report` null or
/// valid.
#[no_mangle]
pub unsafe extern "C" fn hc_chow_verify(
    chow: *const HcChow,
    relations_json: *const c_char,
    labels_json: *const c_char,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> HcStatus {
    guard(|| {
        let c = chow.as_ref().ok_or_else(null)?;
        if passed.is_null() {
            return Err(null());
        }
        let relations = RelationFile::parse(text(relations_json)?)?;
        let labels = if labels_json.is_null() {
            None
        } else {
            Some(LabelFile::parse(text(labels_json)?)?)
        };
        let r = check_relation_file(&c.surface, c.points, &c.module, &relations, labels.as_ref())?;
        *passed = r.all_passed && r.relation_cut_equal;
        if !report.is_null() {
            let json = serde_json::to_string(&r)
                .map_err(|e| Failure(HcStatus::Computation, e.to_string()))?;
            *report = c_string(json)?;
        }
        Ok(())
    })
}
