use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;
use steinmann_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a returned string.
unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    stm_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = stm_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn context() -> *mut StmContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(stm_context_new(ptr::null(), 5, &mut ctx), StmStatus::Ok);
    ctx
}

unsafe fn element(json: &str) -> *mut StmElement {
    let mut e = ptr::null_mut();
    assert_eq!(stm_element_from_json(c(json).as_ptr(), &mut e), StmStatus::Ok);
    e
}

#[test]
fn arrangements() {
    unsafe {
        let ctx = context();
        let mut count = 0;
        assert_eq!(stm_chamber_count(ctx, 4, &mut count), StmStatus::Ok);
        assert_eq!(count, 32);
        assert_eq!(stm_chamber_count(ctx, 6, &mut count), StmStatus::ResourceLimit);
        assert!(last_error().contains("exceeds"));

        let mut arr = ptr::null_mut();
        assert_eq!(stm_arrangement_new(ctx, 3, &mut arr), StmStatus::Ok);
        assert_eq!(stm_arrangement_len(arr), 6);
        let mut s = ptr::null_mut();
        assert_eq!(stm_arrangement_signs(arr, 2, &mut s), StmStatus::Ok);
        let signs = take(s);
        let mut id = 99;
        assert_eq!(stm_arrangement_find(arr, c(&signs).as_ptr(), &mut id), StmStatus::Ok);
        assert_eq!(id, 2);
        assert_eq!(stm_arrangement_find(arr, c("+").as_ptr(), &mut id), StmStatus::Domain);
        assert_eq!(stm_arrangement_signs(arr, 6, &mut s), StmStatus::Domain);

        assert_eq!(stm_arrangement_json(arr, &mut s), StmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["chambers"].as_array().unwrap().len(), 6);
        assert_eq!(stm_eulerian_json(arr, &mut s), StmStatus::Ok);
        assert!(take(s).contains("1/6"));
        let mut rels = 1;
        assert_eq!(stm_relation_count(ctx, arr, &mut rels), StmStatus::Ok);
        assert_eq!(rels, 0);

        let mut d = ptr::null_mut();
        assert_eq!(stm_dynkin(arr, 0, &mut d), StmStatus::Ok);
        assert!(stm_element_len(d) > 0);
        stm_element_free(d);
        stm_arrangement_free(arr);
        stm_context_free(ctx);
    }
}

#[test]
fn elements() {
    unsafe {
        let m = element(r#"{"ground":["1","2"],"basis":"M","terms":[{"key":[["1","2"]],"coeff":"1"}]}"#);
        let mut p = ptr::null_mut();
        assert_eq!(stm_element_change_basis(m, c("P").as_ptr(), &mut p), StmStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(stm_element_change_basis(p, c("M").as_ptr(), &mut back), StmStatus::Ok);
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        stm_element_json(m, &mut s1);
        stm_element_json(back, &mut s2);
        assert_eq!(take(s1), take(s2));
        assert_eq!(stm_element_change_basis(m, c("Z").as_ptr(), &mut back), StmStatus::Parse);

        let mut s = ptr::null_mut();
        assert_eq!(stm_element_antipode(m, &mut back), StmStatus::Ok);
        stm_element_free(back);
        assert_eq!(stm_element_comultiply_json(m, c(r#"["1"]"#).as_ptr(), &mut s), StmStatus::Ok);
        assert!(take(s).contains("grounds"));

        let a = element(r#"{"ground":["1"],"basis":"H","terms":[{"key":[["1"]],"coeff":"2"}]}"#);
        let b = element(r#"{"ground":["2"],"basis":"H","terms":[{"key":[["2"]],"coeff":"1/3"}]}"#);
        let mut ab = ptr::null_mut();
        assert_eq!(stm_element_multiply(a, b, &mut ab), StmStatus::Ok);
        stm_element_json(ab, &mut s);
        assert_eq!(take(s), r#"{"ground":["1","2"],"basis":"H","terms":[{"key":[["1"],["2"]],"coeff":"2/3"}]}"#);
        let mut aa = ptr::null_mut();
        assert_eq!(stm_element_multiply(a, a, &mut aa), StmStatus::Domain);

        let h = element(r#"{"ground":["1","2"],"basis":"H","terms":[{"key":[["1","2"]],"coeff":"5"}]}"#);
        assert_eq!(stm_element_pairing(m, h, &mut s), StmStatus::Ok);
        assert_eq!(take(s), "5");

        for e in [m, p, a, b, ab, h] {
            stm_element_free(e);
        }
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(stm_element_from_json(c("{oops").as_ptr(), &mut e), StmStatus::Parse);
        assert!(last_error().starts_with("parse error"));
        assert!(e.is_null());
        assert_eq!(stm_element_from_json(ptr::null(), &mut e), StmStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(stm_element_from_json(bad.as_ptr().cast(), &mut e), StmStatus::InvalidUtf8);
        let mut n = 0;
        assert_eq!(stm_chamber_count(ptr::null(), 3, &mut n), StmStatus::NullPointer);
        let ctx = context();
        assert_eq!(stm_chamber_count(ctx, 3, ptr::null_mut()), StmStatus::NullPointer);
        assert_eq!(stm_chamber_count(ctx, 3, &mut n), StmStatus::Ok);
        assert!(stm_last_error().is_null());
        assert_eq!(stm_arrangement_len(ptr::null()), 0);
        stm_context_free(ptr::null_mut());
        stm_element_free(ptr::null_mut());
        stm_string_free(ptr::null_mut());
        stm_context_free(ctx);
        let v = CStr::from_ptr(stm_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn command_line() {
    unsafe {
        let args = [c("chambers"), c("count"), c("--n"), c("4")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(stm_run(argv.len(), argv.as_ptr(), &mut out, &mut err), 0);
        assert_eq!(take(out), "{\"n\":4,\"chambers\":32}\n");
        assert_eq!(take(err), "");
        let args = [c("antipode"), c("{not json")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(stm_run(argv.len(), argv.as_ptr(), ptr::null_mut(), &mut err), 2);
        assert!(!take(err).is_empty());
        assert_eq!(stm_run(1, ptr::null(), ptr::null_mut(), ptr::null_mut()), -1);
    }
}
