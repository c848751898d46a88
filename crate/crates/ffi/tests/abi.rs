use std::ffi::{c_char, c_int, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use partalg_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pa_string_free(s) };
    out
}

fn last_error() -> String {
    let p = pa_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn diagram(json: &str) -> *mut PaDiagram {
    let c = CString::new(json).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pa_diagram_from_json(c.as_ptr(), &mut d) }, PaStatus::Ok);
    d
}

#[test]
fn counts() {
    let mut n = 0u64;
    for (double, want) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (6, 203)] {
        assert_eq!(unsafe { pa_count_diagrams(double, &mut n) }, PaStatus::Ok);
        assert_eq!(n, want);
    }
    assert_eq!(unsafe { pa_count_diagrams(40, &mut n) }, PaStatus::LimitExceeded);
    assert!(!last_error().is_empty());
}

#[test]
fn compose_with_loop() {
    let e = diagram(r#"{"double_rank": 2, "blocks": [[1], [-1]]}"#);
    let mut out = ptr::null_mut();
    let mut loops = 0usize;
    assert_eq!(unsafe { pa_diagram_compose(e, e, &mut out, &mut loops) }, PaStatus::Ok);
    assert_eq!(loops, 1);
    let mut p = 7usize;
    assert_eq!(unsafe { pa_diagram_propagating_number(out, &mut p) }, PaStatus::Ok);
    assert_eq!(p, 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pa_diagram_to_json(out, &mut s) }, PaStatus::Ok);
    let back = diagram(&take(s));
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        pa_diagram_to_json(back, &mut a);
        pa_diagram_to_json(out, &mut b);
    }
    assert_eq!(take(a), take(b));
    unsafe {
        pa_diagram_free(back);
        pa_diagram_free(out);
        pa_diagram_free(e);
    }
}

#[test]
fn element_arithmetic() {
    // p^2 = n p at rank 1
    let p = diagram(r#"{"double_rank": 2, "blocks": [[1], [-1]]}"#);
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { pa_element_from_diagram(p, 7, 1, &mut e) }, PaStatus::Ok);
    let (mut sq, mut dbl) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { pa_element_mul(e, e, &mut sq) }, PaStatus::Ok);
    assert_eq!(unsafe { pa_element_add(e, e, &mut dbl) }, PaStatus::Ok);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pa_element_trace(sq, &mut t) }, PaStatus::Ok);
    assert_eq!(take(t), "49");
    assert_eq!(unsafe { pa_element_trace(dbl, &mut t) }, PaStatus::Ok);
    assert_eq!(take(t), "14");
    let mut z: c_int = -1;
    assert_eq!(unsafe { pa_element_is_zero(sq, &mut z) }, PaStatus::Ok);
    assert_eq!(z, 0);
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { pa_element_to_json(sq, &mut j) }, PaStatus::Ok);
    assert!(take(j).contains('7'));
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { pa_element_from_diagram(p, 1, 0, &mut bad) }, PaStatus::DivisionByZero);
    assert!(bad.is_null());
    unsafe {
        pa_element_free(e);
        pa_element_free(sq);
        pa_element_free(dbl);
        pa_diagram_free(p);
    }
}

#[test]
fn rank_mismatch_is_domain_error() {
    let a = diagram(r#"{"double_rank": 2, "blocks": [[1, -1]]}"#);
    let b = diagram(r#"{"double_rank": 4, "blocks": [[1, -1], [2, -2]]}"#);
    let mut out = ptr::null_mut();
    let mut loops = 0usize;
    let st = unsafe { pa_diagram_compose(a, b, &mut out, &mut loops) };
    assert_ne!(st, PaStatus::Ok);
    assert!(out.is_null());
    unsafe {
        pa_diagram_free(a);
        pa_diagram_free(b);
    }
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { pa_diagram_from_json(ptr::null(), &mut d) }, PaStatus::NullPointer);
    assert!(last_error().contains("null"));
    let junk = CString::new("{not json").unwrap();
    assert_eq!(unsafe { pa_diagram_from_json(junk.as_ptr(), &mut d) }, PaStatus::Parse);
    let bytes = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { pa_diagram_from_json(bytes.as_ptr().cast(), &mut d) },
        PaStatus::InvalidUtf8
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pa_diagram_to_json(ptr::null(), &mut s) }, PaStatus::NullPointer);
    let ok = CString::new(r#"{"double_rank": 2, "blocks": [[1, -1]]}"#).unwrap();
    assert_eq!(unsafe { pa_diagram_from_json(ok.as_ptr(), ptr::null_mut()) }, PaStatus::NullPointer);
    unsafe {
        pa_diagram_free(ptr::null_mut());
        pa_element_free(ptr::null_mut());
        pa_string_free(ptr::null_mut());
    }
}

#[test]
fn characters_and_verdicts() {
    let mu = CString::new("1").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pa_char_poly(mu.as_ptr(), 0, &mut s) }, PaStatus::Ok);
    // x - 1
    assert_eq!(take(s), r#"["-1","1"]"#);
    let bad = CString::new("1,2").unwrap();
    assert_ne!(unsafe { pa_char_poly(bad.as_ptr(), 0, &mut s) }, PaStatus::Ok);

    let (mut th, mut gr): (c_int, c_int) = (-5, -5);
    assert_eq!(unsafe { pa_semisimple(4, 2, &mut th, &mut gr) }, PaStatus::Ok);
    assert_eq!((th, gr), (0, 0));
    assert_eq!(unsafe { pa_semisimple(4, 3, &mut th, &mut gr) }, PaStatus::Ok);
    assert_eq!((th, gr), (1, 1));
    assert_eq!(unsafe { pa_semisimple(12, 20, &mut th, &mut gr) }, PaStatus::Ok);
    assert_eq!((th, gr), (1, -1));
}

#[test]
fn header_matches_exports() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/partalg.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build");
    for f in [
        "pa_last_error",
        "pa_string_free",
        "pa_count_diagrams",
        "pa_diagram_from_json",
        "pa_diagram_compose",
        "pa_element_mul",
        "pa_char_poly",
        "pa_semisimple",
        "typedef struct PaDiagram PaDiagram",
        "PA_STATUS_NULL_POINTER = 1",
    ] {
        assert!(text.contains(f), "header lacks {f}");
    }
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
