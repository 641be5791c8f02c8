use std::ffi::{CStr, CString};
use std::ptr;

use jetbound_ffi::*;

const DIRICHLET: &str = r#"{"n": 2, "m": 1, "lagrangian": "1/2*u1_{1,0}^2 + 1/2*u1_{0,1}^2"}"#;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { jb_string_free(s) };
    out
}

fn last_error() -> String {
    let p = jb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn problem(json: &str) -> *mut JbProblem {
    let json = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { jb_problem_from_json(json.as_ptr(), &mut p) },
        JbStatus::Ok
    );
    p
}

#[test]
fn rel_euler_through_handles() {
    let p = problem(DIRICHLET);
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { jb_run(p, JbCommand::RelEuler, &mut r) },
        JbStatus::Ok
    );
    assert!(jb_last_error().is_null());
    unsafe {
        assert_eq!(jb_report_el_len(r), 1);
        assert_eq!(take(jb_report_el(r, 0)), "-u1_{2,0} - u1_{0,2}");
        assert!(jb_report_el(r, 1).is_null());
        assert_eq!(jb_report_theta_len(r), 1);
        let (mut k, mut i) = (0usize, 9u32);
        assert_eq!(take(jb_report_theta(r, 0, &mut k, &mut i)), "ub1_1_{0}");
        assert_eq!((k, i), (1, 0));
        let json = take(jb_report_json(r));
        assert!(json.contains("\"expr\": \"ub1_1_{0}\""));
        assert!(take(jb_report_text(r)).contains("natural boundary conditions on x_n = 0"));
        jb_report_free(r);
        jb_problem_free(p);
    }
}

#[test]
fn check_and_overrides() {
    let p = problem(DIRICHLET);
    let alt = CString::new("alternate").unwrap();
    let bad = CString::new("sideways").unwrap();
    unsafe {
        assert_eq!(jb_problem_set_strategy(p, alt.as_ptr()), JbStatus::Ok);
        assert_eq!(
            jb_problem_set_strategy(p, bad.as_ptr()),
            JbStatus::InputError
        );
        assert!(last_error().contains("sideways"));
        assert_eq!(jb_problem_set_sampling(p, 3, 11), JbStatus::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(jb_run(p, JbCommand::Check, &mut r), JbStatus::Ok);
        assert!(jb_report_passed(r));
        jb_report_free(r);
        jb_problem_free(p);
    }
}

#[test]
fn input_errors_set_message() {
    let json = CString::new(r#"{"n": 2, "m": 1, "lagrangian": "u1_{1,"}"#).unwrap();
    let mut p = ptr::null_mut();
    let st = unsafe { jb_problem_from_json(json.as_ptr(), &mut p) };
    assert_eq!(st, JbStatus::InputError);
    assert!(p.is_null());
    assert!(last_error().contains("syntax error"));

    assert_eq!(
        unsafe { jb_problem_from_json(ptr::null(), &mut p) },
        JbStatus::NullPointer
    );
    let raw = [0xffu8, 0];
    assert_eq!(
        unsafe { jb_problem_from_json(raw.as_ptr().cast(), &mut p) },
        JbStatus::InvalidUtf8
    );
}

#[test]
fn pullback_and_null_handles() {
    let e = CString::new("x2*u1 + u1_{2,3}").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { jb_pullback(2, 1, e.as_ptr(), &mut out) },
        JbStatus::Ok
    );
    assert_eq!(take(out), "ub1_3_{2}");
    let pole = CString::new("1/x2").unwrap();
    assert_eq!(
        unsafe { jb_pullback(2, 1, pole.as_ptr(), &mut out) },
        JbStatus::InputError
    );
    assert!(out.is_null());
    unsafe {
        assert!(jb_report_json(ptr::null()).is_null());
        assert_eq!(jb_report_el_len(ptr::null()), 0);
        assert!(!jb_report_passed(ptr::null()));
        jb_report_free(ptr::null_mut());
        jb_problem_free(ptr::null_mut());
        jb_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(jb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
