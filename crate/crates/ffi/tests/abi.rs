use std::ffi::{CStr, CString};
use std::ptr;

use pantscx_ffi::*;

#[test]
fn enumerate_and_domain_errors() {
    let mut n = 0usize;
    unsafe {
        assert_eq!(pantscx_enumerate_count(0, 5, &mut n), PantscxStatus::Ok);
        assert_eq!(n, 15);
        assert_eq!(pantscx_enumerate_count(0, 2, &mut n), PantscxStatus::Domain);
        let msg = CStr::from_ptr(pantscx_last_error()).to_str().unwrap();
        assert!(msg.contains("g=0, n=2"), "{msg}");
        assert_eq!(
            pantscx_enumerate_count(0, 4, ptr::null_mut()),
            PantscxStatus::NullArgument
        );
    }
}

#[test]
fn build_serialize_parse_verify() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(pantscx_build(0, 5, false, 1, &mut c), PantscxStatus::Ok);
        let (mut v, mut e, mut k) = (0, 0, 0);
        assert_eq!(
            pantscx_complex_counts(c, &mut v, &mut e, &mut k),
            PantscxStatus::Ok
        );
        assert_eq!((v, e, k), (15, 30, 22));

        let text = pantscx_complex_serialize(c, PantscxFormat::Text);
        let owned = CStr::from_ptr(text).to_owned();
        pantscx_string_free(text);
        let mut back = ptr::null_mut();
        assert_eq!(
            pantscx_complex_parse(owned.as_ptr(), &mut back),
            PantscxStatus::Ok
        );
        let again = pantscx_complex_serialize(back, PantscxFormat::Text);
        assert_eq!(CStr::from_ptr(again), owned.as_c_str());
        pantscx_string_free(again);

        let (mut verdict, mut detail) = (PantscxVerdict::Unknown, 0usize);
        assert_eq!(
            pantscx_check_simply_connected(back, 1_000_000, &mut verdict, &mut detail),
            PantscxStatus::Ok
        );
        assert_eq!(verdict, PantscxVerdict::Trivial);
        assert!(detail >= 1);
        pantscx_complex_free(back);
        pantscx_complex_free(c);
    }
}

#[test]
fn stripped_complex_has_homology() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(pantscx_build(0, 4, false, 0, &mut c), PantscxStatus::Ok);
        let text = pantscx_complex_serialize(c, PantscxFormat::Text);
        let full = CStr::from_ptr(text).to_str().unwrap().to_owned();
        pantscx_string_free(text);
        pantscx_complex_free(c);
        let stripped = format!("{}cells\n", &full[..full.find("cells\n").unwrap()]);
        let stripped = CString::new(stripped).unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(
            pantscx_complex_parse(stripped.as_ptr(), &mut s),
            PantscxStatus::Ok
        );
        let mut b = 0;
        assert_eq!(pantscx_complex_betti1(s, &mut b), PantscxStatus::Ok);
        assert_eq!(b, 1);
        let (mut verdict, mut detail) = (PantscxVerdict::Trivial, 0usize);
        pantscx_check_simply_connected(s, 1000, &mut verdict, &mut detail);
        assert_eq!((verdict, detail), (PantscxVerdict::NontrivialH1, 1));
        pantscx_complex_free(s);
    }
}

#[test]
fn parse_errors_are_reported() {
    let bad = CString::new("complex type=Q g=0 n=4\n").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            pantscx_complex_parse(bad.as_ptr(), &mut c),
            PantscxStatus::Parse
        );
        assert!(c.is_null());
        assert!(!CStr::from_ptr(pantscx_last_error()).to_bytes().is_empty());
    }
}

#[test]
fn maps_through_the_abi() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(pantscx_map_phi(0, 5, &mut m), PantscxStatus::Ok);
        let mut surj = false;
        assert_eq!(pantscx_map_is_surjective(m, &mut surj), PantscxStatus::Ok);
        assert!(surj);
        let (mut ok, mut report) = (false, ptr::null_mut());
        assert_eq!(
            pantscx_map_check(m, 64, &mut ok, &mut report),
            PantscxStatus::Ok
        );
        assert!(ok);
        let r = CStr::from_ptr(report).to_str().unwrap().to_owned();
        pantscx_string_free(report);
        assert!(r.starts_with("report kind=phi"));
        let text = pantscx_map_serialize(m);
        assert!(CStr::from_ptr(text)
            .to_str()
            .unwrap()
            .starts_with("map kind=phi"));
        pantscx_string_free(text);
        pantscx_map_free(m);

        let mut p = ptr::null_mut();
        assert_eq!(pantscx_map_psi(1, &mut p), PantscxStatus::Domain);
        assert_eq!(pantscx_map_psi(2, &mut p), PantscxStatus::Ok);
        pantscx_map_free(p);
    }
}

#[test]
fn header_declares_the_api() {
    let h =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pantscx.h")).unwrap();
    for name in [
        "typedef struct PantscxComplex PantscxComplex;",
        "PANTSCX_STATUS_RESOURCES = 3",
        "pantscx_build(",
        "pantscx_check_simply_connected(",
        "pantscx_map_check(",
        "pantscx_last_error(void)",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}
