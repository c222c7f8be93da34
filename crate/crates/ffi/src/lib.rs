//! C ABI for `ghost-slopes`.
//!
//! Objects are opaque handles created by `gs_*_new` / `gs_*_parse` and released
//! with the matching `gs_*_free`. Every call returns a [`GsStatus`]; on failure
//! [`gs_last_error`] describes what went wrong on the calling thread. Strings
//! handed out by the library must be released with [`gs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ghost_slopes::chars::{EpsilonChar, WStarProfile};
use ghost_slopes::dims::ModuleSpec;
use ghost_slopes::ghost::coefficient;
use ghost_slopes::newton::{series_polygon, Agreement};
use ghost_slopes::padic::PrimeContext;
use ghost_slopes::zigzag::{direct_sum_compare, theorem_condition, zigzag_check, ZigzagVerdict};
use ghost_slopes::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Utf8 = 4,
    Panic = 5,
}

/// A character `(p, c, k0)`.
pub struct GsContext {
    eps: EpsilonChar,
}

/// A direct sum of s-parameters.
pub struct GsSpec {
    spec: ModuleSpec,
}

/// An evaluation point, given by its distances to the ghost zeros.
pub struct GsProfile {
    w: WStarProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(GsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => GsStatus::Parse,
            _ => GsStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GsStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(GsStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_context_new(p: i64, c: i64, k0: i64, out: *mut *mut GsContext) -> GsStatus {
    guard(|| {
        let eps = EpsilonChar::new(p, c, k0)?;
        put(out, Box::into_raw(Box::new(GsContext { eps })), "out")
    })
}

/// # Safety
/// `ctx` must be null or a live handle from [`gs_context_new`].
#[no_mangle]
pub unsafe extern "C" fn gs_context_free(ctx: *mut GsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Parses a spec such as `s:3x2+s:0` or `ab:2,3,split`.
///
/// # Safety
/// `ctx` must be a live context, `text` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_parse(ctx: *const GsContext, text: *const c_char, out: *mut *mut GsSpec) -> GsStatus {
    guard(|| {
        let ctx = get(ctx, "ctx")?;
        let spec = ModuleSpec::parse(ctx.eps, c_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(GsSpec { spec })), "out")
    })
}

/// # Safety
/// `spec` must be null or a live handle from [`gs_spec_parse`].
#[no_mangle]
pub unsafe extern "C" fn gs_spec_free(spec: *mut GsSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Parses `origin:t=<r>` or `k=<int>:t=<r>`.
///
/// # Safety
/// `ctx` must be a live context, `text` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_profile_parse(
    ctx: *const GsContext,
    text: *const c_char,
    out: *mut *mut GsProfile,
) -> GsStatus {
    guard(|| {
        let ctx = get(ctx, "ctx")?;
        let w = WStarProfile::parse(&ctx.eps, c_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(GsProfile { w })), "out")
    })
}

/// # Safety
/// `profile` must be null or a live handle from [`gs_profile_parse`].
#[no_mangle]
pub unsafe extern "C" fn gs_profile_free(profile: *mut GsProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_vp(p: i64, n: i64, out: *mut u32) -> GsStatus {
    guard(|| put(out, PrimeContext::new(p)?.vp(n)?, "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_dig(p: i64, m: u64, out: *mut u64) -> GsStatus {
    guard(|| put(out, PrimeContext::new(p)?.dig(m), "out"))
}

/// `Σ v_p(m)` over `m1 < m ≤ m2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_vp_range_sum(p: i64, m1: u64, m2: u64, out: *mut u64) -> GsStatus {
    guard(|| put(out, PrimeContext::new(p)?.vp_range_sum(m1, m2)?, "out"))
}

/// Coefficient `g_n` as JSON `{"n":..,"factors":[{"k":..,"e":..},..]}`.
/// Free the string with [`gs_string_free`].
///
/// # Safety
/// `spec` must be a live handle, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_ghost_coefficient_json(
    spec: *const GsSpec,
    n: u64,
    dagger: bool,
    out: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let spec = get(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, owned_string(coefficient(&spec.spec, n, dagger).to_json()), "out")
    })
}

/// Newton polygon of the series truncated at `n`, as JSON.
/// Free the string with [`gs_string_free`].
///
/// # Safety
/// `spec` and `profile` must be live handles, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_newton_polygon_json(
    spec: *const GsSpec,
    profile: *const GsProfile,
    n: u64,
    dagger: bool,
    out: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let spec = get(spec, "spec")?;
        let w = get(profile, "profile")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, owned_string(series_polygon(&spec.spec, &w.w, n, dagger).to_json()), "out")
    })
}

/// Compares the polygon of the sum of `specs` with the merge of their polygons.
/// Writes whether they agree, the first differing `x` (0 when equal), and the
/// compared range.
///
/// # Safety
/// `specs` must point to `count` live spec handles; `profile` must be live;
/// the out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_direct_sum_compare(
    specs: *const *const GsSpec,
    count: usize,
    profile: *const GsProfile,
    n: u64,
    dagger: bool,
    out_equal: *mut bool,
    out_at: *mut u64,
    out_confirmed: *mut u64,
) -> GsStatus {
    guard(|| {
        let handles = slice(specs, count, "specs")?;
        let parts: Vec<ModuleSpec> =
            handles.iter().map(|&h| get(h, "spec").map(|s| s.spec.clone())).collect::<Result<_, _>>()?;
        let w = get(profile, "profile")?;
        if out_equal.is_null() || out_at.is_null() || out_confirmed.is_null() {
            return Err(null("out"));
        }
        let r = direct_sum_compare(&parts, &w.w, n, dagger)?;
        let at = match r.agreement {
            Agreement::Equal => 0,
            Agreement::DivergesAt(x) => x,
        };
        put(out_equal, r.is_equal(), "out_equal")?;
        put(out_at, at, "out_at")?;
        put(out_confirmed, r.confirmed_upto, "out_confirmed")
    })
}

/// Zigzag inequalities for the tuple `s[0..len]`. On failure `out_n` is the
/// failing index; on success it is the checked range.
///
/// # Safety
/// `ctx` and `profile` must be live; `s` must point to `len` integers;
/// the out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_zigzag_check(
    ctx: *const GsContext,
    s: *const i64,
    len: usize,
    profile: *const GsProfile,
    n: u64,
    out_holds: *mut bool,
    out_n: *mut u64,
) -> GsStatus {
    guard(|| {
        let ctx = get(ctx, "ctx")?;
        let s = slice(s, len, "s")?;
        let w = get(profile, "profile")?;
        if out_holds.is_null() || out_n.is_null() {
            return Err(null("out"));
        }
        let (holds, x) = match zigzag_check(&ctx.eps, s, &w.w, n)? {
            ZigzagVerdict::Holds { checked_upto } => (true, checked_upto),
            ZigzagVerdict::Fails { n, .. } => (false, n),
        };
        put(out_holds, holds, "out_holds")?;
        put(out_n, x, "out_n")
    })
}

/// Whether every pair in `s[0..len]` is equal or companion, and whether all
/// entries are generic.
///
/// # Safety
/// `ctx` must be live; `s` must point to `len` integers; the out pointers
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gs_theorem_condition(
    ctx: *const GsContext,
    s: *const i64,
    len: usize,
    out_holds: *mut bool,
    out_all_generic: *mut bool,
) -> GsStatus {
    guard(|| {
        let ctx = get(ctx, "ctx")?;
        let s = slice(s, len, "s")?;
        if out_holds.is_null() || out_all_generic.is_null() {
            return Err(null("out"));
        }
        let r = theorem_condition(&ctx.eps, s)?;
        put(out_holds, r.holds, "out_holds")?;
        put(out_all_generic, r.all_generic(), "out_all_generic")
    })
}
