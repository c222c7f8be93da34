use std::ffi::{CStr, CString};
use std::ptr;

use ghost_slopes_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(gs_last_error()) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { gs_string_free(s) };
    out
}

fn context(p: i64, k0: i64) -> *mut GsContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { gs_context_new(p, 0, k0, &mut ctx) }, GsStatus::Ok);
    ctx
}

fn spec(ctx: *const GsContext, text: &str) -> *mut GsSpec {
    let t = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gs_spec_parse(ctx, t.as_ptr(), &mut s) }, GsStatus::Ok, "{}", last_error());
    s
}

fn profile(ctx: *const GsContext, text: &str) -> *mut GsProfile {
    let t = CString::new(text).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { gs_profile_parse(ctx, t.as_ptr(), &mut w) }, GsStatus::Ok, "{}", last_error());
    w
}

#[test]
fn bad_context() {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { gs_context_new(6, 0, 4, &mut ctx) }, GsStatus::InvalidArgument);
    assert!(ctx.is_null());
    assert!(last_error().contains("p must be a prime ≥ 7"));
    assert_eq!(unsafe { gs_context_new(7, 0, 4, ptr::null_mut()) }, GsStatus::NullPointer);
}

#[test]
fn arithmetic() {
    let mut v = 0u32;
    assert_eq!(unsafe { gs_vp(7, 98, &mut v) }, GsStatus::Ok);
    assert_eq!(v, 2);
    assert_eq!(unsafe { gs_vp(7, 0, &mut v) }, GsStatus::InvalidArgument);
    let mut d = 0u64;
    assert_eq!(unsafe { gs_dig(7, 50, &mut d) }, GsStatus::Ok);
    assert_eq!(d, 2);
    assert_eq!(unsafe { gs_vp_range_sum(7, 0, 49, &mut d) }, GsStatus::Ok);
    assert_eq!(d, 8);
    assert_eq!(unsafe { gs_vp_range_sum(7, 5, 4, &mut d) }, GsStatus::InvalidArgument);
}

#[test]
fn coefficients_and_polygons() {
    let ctx = context(7, 4);
    let s = spec(ctx, "s:3");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gs_ghost_coefficient_json(s, 2, false, &mut out) }, GsStatus::Ok);
    assert_eq!(
        take(out),
        r#"{"n":2,"factors":[{"k":16,"e":2},{"k":22,"e":2},{"k":28,"e":1},{"k":34,"e":1},{"k":40,"e":1},{"k":46,"e":1}]}"#
    );
    let w = profile(ctx, "origin:t=1/2");
    assert_eq!(unsafe { gs_newton_polygon_json(s, w, 10, false, &mut out) }, GsStatus::Ok);
    assert!(take(out).contains(r#""slopes":["3/2","5/2""#));
    unsafe {
        gs_profile_free(w);
        gs_spec_free(s);
        gs_context_free(ctx);
    }
}

#[test]
fn parse_errors() {
    let ctx = context(7, 4);
    let bad = CString::new("s:42").unwrap();
    let mut s = ptr::null_mut();
    assert_ne!(unsafe { gs_spec_parse(ctx, bad.as_ptr(), &mut s) }, GsStatus::Ok);
    assert!(s.is_null());
    assert!(!last_error().is_empty());
    let junk = CString::new("q:1").unwrap();
    assert_eq!(unsafe { gs_spec_parse(ctx, junk.as_ptr(), &mut s) }, GsStatus::Parse);
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { gs_spec_parse(ctx, bytes.as_ptr().cast(), &mut s) }, GsStatus::Utf8);
    assert_eq!(unsafe { gs_spec_parse(ctx, ptr::null(), &mut s) }, GsStatus::NullPointer);
    let mut w = ptr::null_mut();
    let t0 = CString::new("origin:t=0").unwrap();
    assert_ne!(unsafe { gs_profile_parse(ctx, t0.as_ptr(), &mut w) }, GsStatus::Ok);
    unsafe { gs_context_free(ctx) };
}

#[test]
fn checks() {
    let ctx = context(7, 4);
    let a = spec(ctx, "s:3");
    let w = profile(ctx, "k=16:t=5/2");
    let specs = [a as *const GsSpec, a as *const GsSpec];
    let (mut equal, mut at, mut upto) = (false, 1u64, 0u64);
    let st = unsafe { gs_direct_sum_compare(specs.as_ptr(), 2, w, 60, false, &mut equal, &mut at, &mut upto) };
    assert_eq!(st, GsStatus::Ok, "{}", last_error());
    assert!(equal);
    assert_eq!(at, 0);
    assert!(upto > 0);
    assert_eq!(
        unsafe { gs_direct_sum_compare(ptr::null(), 2, w, 60, false, &mut equal, &mut at, &mut upto) },
        GsStatus::NullPointer
    );

    let tuple = [3i64, 3];
    let (mut holds, mut generic) = (false, false);
    assert_eq!(unsafe { gs_theorem_condition(ctx, tuple.as_ptr(), 2, &mut holds, &mut generic) }, GsStatus::Ok);
    assert!(holds && generic);
    let mut n = 0u64;
    assert_eq!(unsafe { gs_zigzag_check(ctx, tuple.as_ptr(), 2, w, 60, &mut holds, &mut n) }, GsStatus::Ok);
    assert!(holds);
    let outside = [0i64, 3];
    assert_eq!(
        unsafe { gs_zigzag_check(ctx, outside.as_ptr(), 2, w, 60, &mut holds, &mut n) },
        GsStatus::InvalidArgument
    );
    unsafe {
        gs_profile_free(w);
        gs_spec_free(a);
        gs_context_free(ctx);
        gs_string_free(ptr::null_mut());
    }
}
