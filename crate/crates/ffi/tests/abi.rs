use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cactus_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cactus_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cactus_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn aj3_ball(radius: u32) -> *mut CactusBall {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { cactus_ball_new(CactusFamily::Affine, 3, radius, 0, &mut b) }, CactusStatus::Ok);
    b
}

#[test]
fn normalize_and_equal() {
    let w = CString::new("1,2;1,3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cactus_normalize(CactusFamily::Affine, 3, w.as_ptr(), &mut out) }, CactusStatus::Ok);
    assert_eq!(take(out), "1,3;2,3");

    let (a, b) = (CString::new("1,2;3,5").unwrap(), CString::new("3,5;1,2").unwrap());
    let mut eq = false;
    assert_eq!(unsafe { cactus_equal(CactusFamily::Affine, 5, a.as_ptr(), b.as_ptr(), &mut eq) }, CactusStatus::Ok);
    assert!(eq);
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("1,1").unwrap();
    let s = unsafe { cactus_normalize(CactusFamily::Affine, 3, bad.as_ptr(), &mut out) };
    assert_eq!(s, CactusStatus::InvalidArgument);
    assert!(last_error().contains("1,1"));

    let s = unsafe { cactus_normalize(CactusFamily::Affine, 3, ptr::null(), &mut out) };
    assert_eq!(s, CactusStatus::NullPointer);

    let s = unsafe { cactus_normalize(CactusFamily::Affine, 1, bad.as_ptr(), &mut out) };
    assert_eq!(s, CactusStatus::InvalidArgument);

    let mut b = ptr::null_mut();
    let s = unsafe { cactus_ball_new(CactusFamily::Affine, 3, 5, 10, &mut b) };
    assert_eq!(s, CactusStatus::BudgetExceeded);
    assert!(b.is_null());

    let invalid = [0xffu8, 0];
    let s = unsafe { cactus_normalize(CactusFamily::Affine, 3, invalid.as_ptr().cast(), &mut out) };
    assert_eq!(s, CactusStatus::InvalidUtf8);
}

#[test]
fn ball_queries() {
    let b = aj3_ball(3);
    let mut n = 0usize;
    assert_eq!(unsafe { cactus_ball_vertex_count(b, &mut n) }, CactusStatus::Ok);
    assert_eq!(n, 121);

    let mut len = 0usize;
    assert_eq!(unsafe { cactus_ball_sphere_sizes(b, ptr::null_mut(), 0, &mut len) }, CactusStatus::Ok);
    let mut sizes = vec![0usize; len];
    assert_eq!(unsafe { cactus_ball_sphere_sizes(b, sizes.as_mut_ptr(), len, &mut len) }, CactusStatus::Ok);
    assert_eq!(sizes, [1, 6, 24, 90]);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cactus_ball_export_json(b, &mut json) }, CactusStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 121);
    unsafe { cactus_ball_free(b) };
}

#[test]
fn verify_and_embed() {
    let b = aj3_ball(4);
    for check in [
        CactusCheck::Squares,
        CactusCheck::Edges,
        CactusCheck::Cubes,
        CactusCheck::Median,
        CactusCheck::SquareNormalForms,
    ] {
        let (mut passed, mut report) = (false, ptr::null_mut());
        assert_eq!(unsafe { cactus_verify(b, check, 1, &mut passed, &mut report) }, CactusStatus::Ok, "{check:?}");
        assert!(passed, "{check:?}");
        assert!(take(report).contains("\"passed\":true"));
    }
    let mut svg = ptr::null_mut();
    let h = CString::new("1,2;2,3").unwrap();
    assert_eq!(unsafe { cactus_embed_svg(b, h.as_ptr(), &mut svg) }, CactusStatus::Ok);
    assert!(take(svg).contains("graph-geodesic"));
    unsafe { cactus_ball_free(b) };

    let mut b4 = ptr::null_mut();
    assert_eq!(unsafe { cactus_ball_new(CactusFamily::Affine, 4, 1, 0, &mut b4) }, CactusStatus::Ok);
    assert_eq!(unsafe { cactus_embed_svg(b4, ptr::null(), &mut svg) }, CactusStatus::InvalidArgument);
    unsafe { cactus_ball_free(b4) };
}
