//! C interface to `steinmann_core`.
//!
//! Objects live behind opaque handles that the caller frees with the matching
//! `*_free` function. Fallible calls return a [`StmStatus`]; on failure the
//! message is available from [`stm_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`stm_string_free`]. Algebraic values cross the boundary as JSON text in the
//! same encoding the `steinmann` command line uses.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::sync::Arc;

use libc::{c_char, c_int};
use serde_json::Value;
use steinmann_core::adjoint::{dynkin, eulerian_element, Arrangement, Atlas, ChamberFunctional, HARD_MAX_N};
use steinmann_core::sigma::{antipode, change_basis, comultiply, multiply, pairing, Basis, Element};
use steinmann_core::{json, Error, GroundSet};

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, unknown label or basis name, unreadable file.
    Parse = 3,
    /// A mathematical precondition failed.
    Domain = 4,
    /// The ground set is larger than the context allows.
    ResourceLimit = 5,
    NotSteinmann = 6,
    /// An internal error; the library state is still usable.
    Panic = 7,
}

/// Shared caches for adjoint arrangements and Steinmann relations.
pub struct StmContext {
    atlas: Atlas,
}

/// The chambers of the adjoint braid arrangement on `{1, …, n}`.
pub struct StmArrangement {
    arr: Arc<Arrangement>,
    ground: GroundSet,
}

/// An element of `Σ` or `Σ*` in one of the bases `M P C H Q`.
pub struct StmElement {
    x: Element,
    ground: GroundSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(StmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ResourceLimit { .. } => StmStatus::ResourceLimit,
            Error::NotSteinmann => StmStatus::NotSteinmann,
            ref e if e.is_usage() => StmStatus::Parse,
            _ => StmStatus::Domain,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> StmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            StmStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(Some(format!("internal error: {msg}")));
            StmStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(StmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(StmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(to_c(s));
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(())
}

fn parse_json(s: &str) -> Result<Value, Fail> {
    Ok(json::parse_value(s)?)
}

/// Version of the library, a static string.
#[no_mangle]
pub extern "C" fn stm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null after a success.
/// Valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn stm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn stm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context. `cache_dir` may be null for no on-disk cache. `max_n`
/// bounds the adjoint computations and is clamped to the hard limit.
///
/// # Safety
/// `cache_dir` is null or a valid C string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_context_new(
    cache_dir: *const c_char,
    max_n: usize,
    out: *mut *mut StmContext,
) -> StmStatus {
    guard(|| {
        let dir = if cache_dir.is_null() { None } else { Some(PathBuf::from(text(cache_dir, "cache_dir")?)) };
        put_handle(out, StmContext { atlas: Atlas::new(dir, max_n.min(HARD_MAX_N)) })
    })
}

/// # Safety
/// `ctx` is null or a live context.
#[no_mangle]
pub unsafe extern "C" fn stm_context_free(ctx: *mut StmContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of chambers of the adjoint braid arrangement on `n` labels.
///
/// # Safety
/// `ctx` is a live context; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_chamber_count(ctx: *const StmContext, n: usize, out: *mut usize) -> StmStatus {
    guard(|| {
        let ctx = borrow(ctx, "ctx")?;
        let ground = GroundSet::numbered(n)?;
        put(out, ctx.atlas.arrangement(ground.all())?.len(), "out")
    })
}

/// The arrangement on `{1, …, n}`, computed or loaded through the context.
///
/// # Safety
/// `ctx` is a live context; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_new(
    ctx: *const StmContext,
    n: usize,
    out: *mut *mut StmArrangement,
) -> StmStatus {
    guard(|| {
        let ctx = borrow(ctx, "ctx")?;
        let ground = GroundSet::numbered(n)?;
        let arr = ctx.atlas.arrangement(ground.all())?;
        put_handle(out, StmArrangement { arr, ground })
    })
}

/// # Safety
/// `arr` is null or a live arrangement.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_free(arr: *mut StmArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// Number of chambers; 0 for a null handle.
///
/// # Safety
/// `arr` is null or a live arrangement.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_len(arr: *const StmArrangement) -> usize {
    arr.as_ref().map_or(0, |a| a.arr.len())
}

/// Sign string of chamber `id`, one `+` or `-` per hyperplane.
///
/// # Safety
/// `arr` is a live arrangement; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_signs(
    arr: *const StmArrangement,
    id: usize,
    out: *mut *mut c_char,
) -> StmStatus {
    guard(|| {
        let a = borrow(arr, "arr")?;
        if id >= a.arr.len() {
            return Err(Error::UnknownChamber(id.to_string()).into());
        }
        put_string(out, a.arr.sign_string(id))
    })
}

/// Index of the chamber with the given sign string.
///
/// # Safety
/// `arr` is a live arrangement; `signs` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_find(
    arr: *const StmArrangement,
    signs: *const c_char,
    out: *mut usize,
) -> StmStatus {
    guard(|| {
        let a = borrow(arr, "arr")?;
        put(out, a.arr.find(text(signs, "signs")?)?, "out")
    })
}

/// Ground, hyperplanes and chambers as JSON.
///
/// # Safety
/// `arr` is a live arrangement; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_arrangement_json(arr: *const StmArrangement, out: *mut *mut c_char) -> StmStatus {
    guard(|| {
        let a = borrow(arr, "arr")?;
        let chambers: Vec<Value> = (0..a.arr.len()).map(|id| json::chamber(&a.arr, id)).collect();
        let v = serde_json::json!({
            "ground": json::labels(&a.ground, a.ground.all()),
            "hyperplanes": json::hyperplanes(&a.ground, &a.arr),
            "chambers": chambers,
        });
        put_string(out, v.to_string())
    })
}

/// Number of Steinmann relations of the arrangement.
///
/// # Safety
/// `ctx` and `arr` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_relation_count(
    ctx: *const StmContext,
    arr: *const StmArrangement,
    out: *mut usize,
) -> StmStatus {
    guard(|| {
        let (ctx, a) = (borrow(ctx, "ctx")?, borrow(arr, "arr")?);
        put(out, ctx.atlas.relations(a.arr.ground())?.len(), "out")
    })
}

/// The Eulerian chamber combination as a functional in JSON.
///
/// # Safety
/// `arr` is a live arrangement; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_eulerian_json(arr: *const StmArrangement, out: *mut *mut c_char) -> StmStatus {
    guard(|| {
        let a = borrow(arr, "arr")?;
        let e = ChamberFunctional::new(&a.arr, eulerian_element(&a.arr)?)?;
        put_string(out, json::functional(&a.ground, &a.arr, &e).to_string())
    })
}

/// The Dynkin element of chamber `id`, in the `H` basis.
///
/// # Safety
/// `arr` is a live arrangement; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_dynkin(arr: *const StmArrangement, id: usize, out: *mut *mut StmElement) -> StmStatus {
    guard(|| {
        let a = borrow(arr, "arr")?;
        if id >= a.arr.len() {
            return Err(Error::UnknownChamber(id.to_string()).into());
        }
        put_handle(out, StmElement { x: dynkin(&a.arr, id), ground: a.ground.clone() })
    })
}

/// Parses an element `{"ground", "basis", "terms"}`. Labels name the ground.
///
/// # Safety
/// `text_json` is a valid C string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_from_json(text_json: *const c_char, out: *mut *mut StmElement) -> StmStatus {
    guard(|| {
        let v = parse_json(text(text_json, "json")?)?;
        let ground = json::infer_ground(&[&v])?;
        let x = json::parse_element(&ground, &v)?;
        put_handle(out, StmElement { x, ground })
    })
}

/// # Safety
/// `e` is null or a live element.
#[no_mangle]
pub unsafe extern "C" fn stm_element_free(e: *mut StmElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `e` is a live element; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_json(e: *const StmElement, out: *mut *mut c_char) -> StmStatus {
    guard(|| {
        let e = borrow(e, "element")?;
        put_string(out, json::element(&e.ground, &e.x).to_string())
    })
}

/// Number of nonzero terms; 0 for a null handle.
///
/// # Safety
/// `e` is null or a live element.
#[no_mangle]
pub unsafe extern "C" fn stm_element_len(e: *const StmElement) -> usize {
    e.as_ref().map_or(0, |e| e.x.len())
}

/// Rewrites `e` in `basis` (`"M"`, `"P"`, `"C"`, `"H"` or `"Q"`).
///
/// # Safety
/// `e` is a live element; `basis` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_change_basis(
    e: *const StmElement,
    basis: *const c_char,
    out: *mut *mut StmElement,
) -> StmStatus {
    guard(|| {
        let e = borrow(e, "element")?;
        let b = Basis::parse(text(basis, "basis")?)?;
        put_handle(out, StmElement { x: change_basis(&e.x, b)?, ground: e.ground.clone() })
    })
}

/// # Safety
/// `e` is a live element; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_antipode(e: *const StmElement, out: *mut *mut StmElement) -> StmStatus {
    guard(|| {
        let e = borrow(e, "element")?;
        put_handle(out, StmElement { x: antipode(&e.x)?, ground: e.ground.clone() })
    })
}

/// Both elements re-read over the union of their label names.
fn common(a: &StmElement, b: &StmElement) -> Result<(GroundSet, Element, Element), Fail> {
    let (va, vb) = (json::element(&a.ground, &a.x), json::element(&b.ground, &b.x));
    let g = json::infer_ground(&[&va, &vb])?;
    let (x, y) = (json::parse_element(&g, &va)?, json::parse_element(&g, &vb)?);
    Ok((g, x, y))
}

/// Product of two elements on disjoint label sets.
///
/// # Safety
/// `a` and `b` are live elements; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_multiply(
    a: *const StmElement,
    b: *const StmElement,
    out: *mut *mut StmElement,
) -> StmStatus {
    guard(|| {
        let (g, x, y) = common(borrow(a, "a")?, borrow(b, "b")?)?;
        put_handle(out, StmElement { x: multiply(&x, &y)?, ground: g })
    })
}

/// Coproduct at the labels listed in `split_json` (a JSON array), as JSON.
///
/// # Safety
/// `e` is a live element; `split_json` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_comultiply_json(
    e: *const StmElement,
    split_json: *const c_char,
    out: *mut *mut c_char,
) -> StmStatus {
    guard(|| {
        let e = borrow(e, "element")?;
        let s = json::parse_split(&e.ground, &parse_json(text(split_json, "split")?)?)?;
        put_string(out, json::tensor(&e.ground, &comultiply(&e.x, s)?).to_string())
    })
}

/// `⟨a, x⟩` for `a` in `Σ*` and `x` in `Σ`, as a rational string `"p/q"`.
///
/// # Safety
/// `a` and `x` are live elements; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn stm_element_pairing(
    a: *const StmElement,
    x: *const StmElement,
    out: *mut *mut c_char,
) -> StmStatus {
    guard(|| {
        let (_, a, x) = common(borrow(a, "a")?, borrow(x, "x")?)?;
        put_string(out, pairing(&a, &x)?.to_string())
    })
}

/// Runs a `steinmann` command line. `argv` holds `argc` arguments without the
/// program name. Standard output and standard error of the command are
/// returned in `out` and `err` (either may be null to discard). Returns the
/// command's exit code, or -1 if `argv` is unusable.
///
/// # Safety
/// `argv` points to `argc` valid C strings; `out` and `err` are null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn stm_run(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        let mut args = vec!["steinmann".to_string()];
        if argc > 0 {
            if argv.is_null() {
                return Err(null("argv"));
            }
            for k in 0..argc {
                args.push(text(*argv.add(k), "argument")?.to_string());
            }
        }
        let (mut o, mut e) = (Vec::new(), Vec::new());
        code = steinmann_core::cli::run(args, &mut o, &mut e);
        for (slot, buf) in [(out, o), (err, e)] {
            if !slot.is_null() {
                slot.write(to_c(String::from_utf8_lossy(&buf).into_owned()));
            }
        }
        Ok(())
    });
    if status == StmStatus::Ok {
        code
    } else {
        -1
    }
}
