use std::ffi::{CStr, CString};
use std::ptr;

use toric_jacobian_ffi::*;

fn last_error() -> String {
    let p = tj_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn hirzebruch(r: u32) -> *mut TjFan {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { tj_fan_hirzebruch(r, &mut fan) }, TjStatus::Ok);
    assert!(!fan.is_null());
    fan
}

fn system(fan: *const TjFan, poly: &str) -> *mut TjSystem {
    let text = CString::new(poly).unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { tj_system_new(fan, text.as_ptr(), &mut sys) }, TjStatus::Ok);
    sys
}

fn take_string(p: *mut libc::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tj_string_free(p) };
    s
}

const F5: &str = "x1^5*x2^3 + x3^2*x4^3 + x3^5*x2^3 + x1^2*x4^3";

#[test]
fn sections_and_genus_on_h1() {
    let fan = hirzebruch(1);
    let mut n = 0usize;
    assert_eq!(unsafe { tj_fan_ray_count(fan, &mut n) }, TjStatus::Ok);
    assert_eq!(n, 4);
    let coeffs = [5i64, 3, 0, 0];
    let mut h = 0u64;
    let mut g = 0i64;
    unsafe {
        assert_eq!(tj_h0(fan, coeffs.as_ptr(), 4, &mut h), TjStatus::Ok);
        assert_eq!(tj_genus(fan, coeffs.as_ptr(), 4, &mut g), TjStatus::Ok);
        tj_fan_free(fan);
    }
    assert_eq!(h, 18);
    assert_eq!(g, 5);
}

#[test]
fn r1_and_j1_dimensions() {
    let fan = hirzebruch(1);
    let sys = system(fan, F5);
    let (mut r1, mut j1, mut nd) = (0u64, 0u64, -1i32);
    let beta = [5i64, 3];
    unsafe {
        assert_eq!(tj_system_r1_dim(sys, 1, 0, &mut r1), TjStatus::Ok);
        assert_eq!(tj_system_j1_dim(sys, beta.as_ptr(), 2, &mut j1), TjStatus::Ok);
        assert_eq!(tj_system_is_nondegenerate(sys, &mut nd), TjStatus::Ok);
        tj_system_free(sys);
        tj_fan_free(fan);
    }
    assert_eq!(r1, 11);
    assert_eq!(j1, 7);
    assert_eq!(nd, 1);
}

#[test]
fn criterion_json_certifies() {
    let fan = hirzebruch(1);
    let sys = system(fan, F5);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tj_system_criterion_json(sys, 0, &mut out) }, TjStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["verdict"]["status"], "certified");
    assert_eq!(v["bound_value"], 1);
    assert_eq!(v["genus"], 5);
    unsafe {
        tj_system_free(sys);
        tj_fan_free(fan);
    }
}

#[test]
fn table_json_rows() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tj_paper_table_json(5, 7, &mut out) }, TjStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["r1_beta"], 11);
    assert_eq!(rows[2]["r1_beta"], 19);
}

#[test]
fn fan_from_json_and_invalid_fan() {
    let good = CString::new(r#"{"rays": [[1,0],[0,1],[-1,-1]]}"#).unwrap();
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { tj_fan_from_json(good.as_ptr(), &mut fan) }, TjStatus::Ok);
    let mut h = 0u64;
    let coeffs = [2i64, 0, 0];
    assert_eq!(unsafe { tj_h0(fan, coeffs.as_ptr(), 3, &mut h) }, TjStatus::Ok);
    assert_eq!(h, 6);
    unsafe { tj_fan_free(fan) };

    let bad = CString::new(r#"{"rays": [[1,0],[0,1]]}"#).unwrap();
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { tj_fan_from_json(bad.as_ptr(), &mut fan) }, TjStatus::InvalidInput);
    assert!(fan.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn error_codes() {
    let fan = hirzebruch(1);
    let mut sys = ptr::null_mut();
    let inhomogeneous = CString::new("x1^2 + x2").unwrap();
    assert_eq!(
        unsafe { tj_system_new(fan, inhomogeneous.as_ptr(), &mut sys) },
        TjStatus::InvalidInput
    );
    assert!(last_error().contains("homogeneous"), "{}", last_error());

    assert_eq!(unsafe { tj_system_new(fan, ptr::null(), &mut sys) }, TjStatus::NullPointer);

    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { tj_system_new(fan, invalid.as_ptr().cast(), &mut sys) },
        TjStatus::InvalidUtf8
    );

    let mut h = 0u64;
    let short = [1i64, 2];
    assert_eq!(unsafe { tj_h0(fan, short.as_ptr(), 2, &mut h) }, TjStatus::InvalidInput);
    assert_eq!(unsafe { tj_h0(ptr::null(), short.as_ptr(), 2, &mut h) }, TjStatus::NullPointer);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tj_paper_table_json(2, 4, &mut out) }, TjStatus::InvalidInput);

    assert_eq!(unsafe { tj_fan_hirzebruch(0, ptr::null_mut()) }, TjStatus::NullPointer);
    unsafe { tj_fan_free(fan) };
}

#[test]
fn success_clears_last_error() {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { tj_fan_hirzebruch(0, ptr::null_mut()) }, TjStatus::NullPointer);
    assert_eq!(unsafe { tj_fan_projective_plane(&mut fan) }, TjStatus::Ok);
    assert!(tj_last_error().is_null());
    unsafe { tj_fan_free(fan) };
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        tj_fan_free(ptr::null_mut());
        tj_system_free(ptr::null_mut());
        tj_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/toric_jacobian.h");
    for name in [
        "tj_last_error",
        "tj_string_free",
        "tj_fan_hirzebruch",
        "tj_fan_projective_plane",
        "tj_fan_from_json",
        "tj_fan_free",
        "tj_fan_ray_count",
        "tj_h0",
        "tj_genus",
        "tj_system_new",
        "tj_system_free",
        "tj_system_r1_dim",
        "tj_system_j1_dim",
        "tj_system_is_nondegenerate",
        "tj_system_criterion_json",
        "tj_paper_table_json",
        "TJ_STATUS_INVALID_INPUT = 3",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
