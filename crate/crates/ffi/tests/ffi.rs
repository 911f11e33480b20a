use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use mospher_ffi::*;

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    mospher_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(mospher_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn so4_round_trip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(mospher_so4_new(2, &mut h), MospherStatus::Ok);
        assert_eq!(mospher_so4_ell(h), 2);
        let mut s = ptr::null_mut();
        assert_eq!(mospher_so4_gen_json(h, 1, &mut s), MospherStatus::Ok);
        let json = take_string(s);
        assert_eq!(json, mospher::export::render(&mospher::export::so4_gen_json(2, 1)));
        assert!(json.contains("\"kind\": \"so4.gen\""));
        mospher_so4_free(h);
    }
}

#[test]
fn so4_eval_matches_core() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(mospher_so4_new(1, &mut h), MospherStatus::Ok);
        let (mut re, mut im) = ([0.0; 2], [0.0; 2]);
        assert_eq!(mospher_so4_eval(h, 2, 1, 0.3, re.as_mut_ptr(), im.as_mut_ptr(), 2), MospherStatus::Ok);
        let expect = mospher::so4::h_eval(1, 2, 1, 0.3).unwrap();
        for i in 0..2 {
            assert_eq!((re[i], im[i]), (expect[i].re, expect[i].im));
        }
        assert_eq!(mospher_so4_eval(h, 2, 1, 0.3, re.as_mut_ptr(), im.as_mut_ptr(), 1), MospherStatus::BufferTooSmall);
        assert_eq!(mospher_so4_eval(h, 2, 1, -1.0, re.as_mut_ptr(), im.as_mut_ptr(), 2), MospherStatus::OutOfDomain);
        assert!(last_error().contains("outside the domain"));
        assert_eq!(mospher_so4_eval(h, 2, 5, 0.3, re.as_mut_ptr(), im.as_mut_ptr(), 2), MospherStatus::InvalidParameter);
        mospher_so4_free(h);
    }
}

#[test]
fn so4_verify_passes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(mospher_so4_new(1, &mut h), MospherStatus::Ok);
        let (mut pass, mut s) = (false, ptr::null_mut());
        assert_eq!(mospher_so4_verify_json(h, 2, 0, &mut pass, &mut s), MospherStatus::Ok);
        assert!(pass);
        assert!(take_string(s).contains("\"all_pass\": true"));
        assert_eq!(last_error(), "");
        mospher_so4_free(h);
    }
}

#[test]
fn sn_case() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(mospher_sn_case_new(3, 1, &mut h), MospherStatus::InvalidParameter);
        assert!(h.is_null());
        assert_eq!(mospher_sn_case_new(5, 1, &mut h), MospherStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mospher_sn_fundamental_json(h, 2, 1, &mut s), MospherStatus::Ok);
        assert_eq!(take_string(s), mospher::export::render(&mospher::export::sn_fundamental_json(5, 1, 2, 1).unwrap()));
        assert_eq!(mospher_sn_fundamental_json(h, 2, 3, &mut s), MospherStatus::InvalidParameter);
        let mut k_n = 0.0;
        assert_eq!(mospher_sn_normalization(h, &mut k_n), MospherStatus::Ok);
        assert!((k_n - 128.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-12);
        let mut pass = false;
        assert_eq!(mospher_sn_verify_json(h, 2, 0, &mut pass, &mut s), MospherStatus::Ok);
        assert!(pass);
        mospher_string_free(s);
        mospher_sn_case_free(h);
    }
}

#[test]
fn zonal_values() {
    unsafe {
        let name = CString::new("sphere").unwrap();
        let mut v = 0.0;
        assert_eq!(mospher_zonal_phi(name.as_ptr(), 2, 2, 0.5, &mut v), MospherStatus::Ok);
        assert!((v - (1.5 * 0.25 - 0.5)).abs() < 1e-15);
        let bad = CString::new("torus").unwrap();
        assert_eq!(mospher_zonal_phi(bad.as_ptr(), 2, 2, 0.5, &mut v), MospherStatus::InvalidParameter);
        assert!(last_error().contains("torus"));
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        assert_eq!(mospher_so4_new(1, ptr::null_mut()), MospherStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(mospher_so4_gen_json(ptr::null(), 0, &mut s), MospherStatus::NullPointer);
        assert_eq!(mospher_zonal_phi(ptr::null(), 2, 0, 0.0, &mut 0.0), MospherStatus::NullPointer);
        mospher_string_free(ptr::null_mut());
        mospher_so4_free(ptr::null_mut());
        mospher_sn_case_free(ptr::null_mut());
        assert_eq!(mospher_so4_ell(ptr::null()), 0);
        assert_eq!(CStr::from_ptr(mospher_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include").join("mospher.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["mospher_so4_new", "mospher_sn_case_new", "mospher_string_free", "mospher_last_error", "MOSPHER_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("mospher_header_{}.c", std::process::id()));
    std::fs::write(&src, "#include \"mospher.h\"\nint main(void) { MospherSo4 *h = 0; return mospher_so4_new(1, &h) == MOSPHER_STATUS_OK ? 0 : 1; }\n").unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header failed to compile"),
        Err(e) => panic!("no C compiler available: {e}"),
    }
}
