//! C interface to `cactus-core`.
//!
//! Every function returns a [`CactusStatus`]; on failure a message is kept
//! per thread and can be read with [`cactus_last_error`]. Strings handed out
//! by the library must be released with [`cactus_string_free`], balls with
//! [`cactus_ball_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cactus_core::cayley::{ball_with_budget, CayleyBall, CayleyError, ExportFormat};
use cactus_core::hyperbolic::{embed_ball, render_svg};
use cactus_core::rewriting::equal;
use cactus_core::{normalize, verify, Family, GroupSpec, Word};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CactusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    BudgetExceeded = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CactusFamily {
    Cactus = 0,
    Affine = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CactusCheck {
    Squares = 0,
    Edges = 1,
    Cubes = 2,
    Median = 3,
    SquareNormalForms = 4,
}

/// Opaque ball of the Cayley graph.
pub struct CactusBall {
    inner: CayleyBall,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Fail = (CactusStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CactusStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return CactusStatus::Ok,
        Ok(Err(fail)) => fail,
        Err(_) => (CactusStatus::Panic, "internal panic".to_string()),
    };
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn invalid(e: impl std::fmt::Display) -> Fail {
    (CactusStatus::InvalidArgument, e.to_string())
}

fn cayley_fail(e: CayleyError) -> Fail {
    match e {
        CayleyError::BudgetExceeded { .. } => (CactusStatus::BudgetExceeded, e.to_string()),
        _ => invalid(e),
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err((CactusStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    non_null(p, what)?;
    CStr::from_ptr(p).to_str().map_err(|_| (CactusStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn spec_of(family: CactusFamily, n: u32) -> Result<GroupSpec, Fail> {
    let family = match family {
        CactusFamily::Cactus => Family::Cactus,
        CactusFamily::Affine => Family::Affine,
    };
    GroupSpec::new(family, n).map_err(invalid)
}

unsafe fn ball_ref<'a>(b: *const CactusBall) -> Result<&'a CayleyBall, Fail> {
    non_null(b, "ball")?;
    Ok(&(*b).inner)
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cactus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cactus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Normal form of `word` (syntax `p,q;p,q;...`). The identity is "".
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_normalize(
    family: CactusFamily,
    n: u32,
    word: *const c_char,
    out: *mut *mut c_char,
) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = spec_of(family, n)?;
        let w = Word::parse(spec, read_str(word, "word")?).map_err(invalid)?;
        *out = to_c(normalize(&w).to_string());
        Ok(())
    })
}

/// Whether two words represent the same element.
///
/// # Safety
/// `a`, `b` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_equal(
    family: CactusFamily,
    n: u32,
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = spec_of(family, n)?;
        let a = Word::parse(spec, read_str(a, "a")?).map_err(invalid)?;
        let b = Word::parse(spec, read_str(b, "b")?).map_err(invalid)?;
        *out = equal(&a, &b).map_err(invalid)?;
        Ok(())
    })
}

/// Builds the ball of the given radius. `max_vertices` of 0 means the default
/// budget.
///
/// # Safety
/// `out` must be writable. The ball must be released with [`cactus_ball_free`].
#[no_mangle]
pub unsafe extern "C" fn cactus_ball_new(
    family: CactusFamily,
    n: u32,
    radius: u32,
    max_vertices: usize,
    out: *mut *mut CactusBall,
) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = spec_of(family, n)?;
        let budget = if max_vertices == 0 { cactus_core::cayley::DEFAULT_VERTEX_BUDGET } else { max_vertices };
        let inner = ball_with_budget(spec, radius, budget).map_err(cayley_fail)?;
        *out = Box::into_raw(Box::new(CactusBall { inner }));
        Ok(())
    })
}

/// # Safety
/// `ball` must come from [`cactus_ball_new`] and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn cactus_ball_free(ball: *mut CactusBall) {
    if !ball.is_null() {
        drop(Box::from_raw(ball));
    }
}

/// # Safety
/// `ball` must be a live ball; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_ball_vertex_count(ball: *const CactusBall, out: *mut usize) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ball_ref(ball)?.len();
        Ok(())
    })
}

/// Writes up to `cap` sphere sizes into `buf` and the full count (radius + 1)
/// into `len`. Pass `cap = 0` to query the length.
///
/// # Safety
/// `buf` must have room for `cap` entries; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_ball_sphere_sizes(
    ball: *const CactusBall,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> CactusStatus {
    guard(|| {
        non_null(len, "len")?;
        let sizes = ball_ref(ball)?.sphere_sizes();
        if cap > 0 {
            non_null(buf, "buf")?;
            let k = cap.min(sizes.len());
            ptr::copy_nonoverlapping(sizes.as_ptr(), buf, k);
        }
        *len = sizes.len();
        Ok(())
    })
}

/// Ball as JSON (vertices with depth, labelled edges).
///
/// # Safety
/// `ball` must be a live ball; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_ball_export_json(ball: *const CactusBall, out: *mut *mut c_char) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        let mut buf = Vec::new();
        ball_ref(ball)?.export(ExportFormat::Json, &mut buf).map_err(cayley_fail)?;
        *out = to_c(String::from_utf8(buf).map_err(invalid)?);
        Ok(())
    })
}

/// Runs a structural check. `passed` receives the verdict; `report` (may be
/// NULL) receives the full report as JSON.
///
/// # Safety
/// `ball` must be a live ball; `passed` must be writable; `report` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_verify(
    ball: *const CactusBall,
    check: CactusCheck,
    depth: u32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> CactusStatus {
    guard(|| {
        non_null(passed, "passed")?;
        let b = ball_ref(ball)?;
        let r = match check {
            CactusCheck::Squares => verify::check_squares_embedded(b),
            CactusCheck::Edges => verify::check_no_shared_consecutive_edges_ball(b),
            CactusCheck::Cubes => verify::check_cube_spans_ball(b),
            CactusCheck::Median => verify::check_median_ball(b, depth).map_err(invalid)?,
            CactusCheck::SquareNormalForms => verify::check_square_normal_forms(b).map_err(invalid)?,
        };
        *passed = r.passed;
        if !report.is_null() {
            *report = to_c(serde_json::to_string(&r).map_err(invalid)?);
        }
        Ok(())
    })
}

/// Renders an AJ_3 ball in the Poincaré disk as SVG. `highlight` (may be
/// NULL) names a vertex whose geodesics from e are drawn.
///
/// # Safety
/// `ball` must be a live ball; `highlight` NULL or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cactus_embed_svg(
    ball: *const CactusBall,
    highlight: *const c_char,
    out: *mut *mut c_char,
) -> CactusStatus {
    guard(|| {
        non_null(out, "out")?;
        let b = ball_ref(ball)?;
        let target = if highlight.is_null() {
            None
        } else {
            let w = Word::parse(b.spec(), read_str(highlight, "highlight")?).map_err(invalid)?;
            Some(b.require(&w).map_err(cayley_fail)?)
        };
        let e = embed_ball(b.clone()).map_err(invalid)?;
        let id = e.ball.identity();
        *out = to_c(render_svg(&e, target.map(|v| (id, v))));
        Ok(())
    })
}
