use std::ffi::{CStr, CString};
use std::ptr;

use realpi0_ffi::*;

unsafe fn compute(g: *mut Rp0Group) -> *mut Rp0Result {
    let mut r = ptr::null_mut();
    assert_eq!(rp0_compute(g, &mut r), Rp0Status::Ok);
    r
}

unsafe fn orders(r: *const Rp0Result) -> (u64, u64) {
    let (mut p, mut h) = (0, 0);
    assert_eq!(rp0_pi0_order(r, &mut p), Rp0Status::Ok);
    assert_eq!(rp0_h1_order(r, &mut h), Rp0Status::Ok);
    (p, h)
}

#[test]
fn gl_and_pso() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rp0_group_gl(5, &mut g), Rp0Status::Ok);
        let mut n = 0;
        assert_eq!(rp0_group_rank(g, &mut n), Rp0Status::Ok);
        assert_eq!(n, 5);
        let r = compute(g);
        assert_eq!(orders(r), (2, 2));
        let mut buf = [9i64; 5];
        assert_eq!(rp0_pi0_generator(r, 0, buf.as_mut_ptr(), 5), Rp0Status::Ok);
        assert_eq!(buf, [1, 0, 0, 0, 0]);
        assert_eq!(rp0_pi0_generator(r, 1, buf.as_mut_ptr(), 5), Rp0Status::OutOfRange);
        let mut ok = false;
        assert_eq!(rp0_embedding_ok(r, &mut ok), Rp0Status::Ok);
        assert!(ok);
        assert_eq!(rp0_oracle_check(r, 4096, &mut ok), Rp0Status::Ok);
        assert!(ok);
        rp0_result_free(r);
        rp0_group_free(g);

        assert_eq!(rp0_group_pso(3, 3, &mut g), Rp0Status::Ok);
        let r = compute(g);
        let mut label = ptr::null_mut();
        assert_eq!(rp0_pi0_generator_label(r, 0, &mut label), Rp0Status::Ok);
        assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "ϖ∨3");
        rp0_string_free(label);
        rp0_result_free(r);
        rp0_group_free(g);
    }
}

#[test]
fn e7_forms() {
    for (form, want) in [("EV", 2), ("EVI", 1), ("EVII", 2)] {
        unsafe {
            let f = CString::new(form).unwrap();
            let mut g = ptr::null_mut();
            assert_eq!(rp0_group_e7(f.as_ptr(), &mut g), Rp0Status::Ok);
            let r = compute(g);
            assert_eq!(orders(r).0, want, "{form}");
            rp0_result_free(r);
            rp0_group_free(g);
        }
    }
}

#[test]
fn errors_set_message() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rp0_group_so(0, 0, &mut g), Rp0Status::InvalidInput);
        assert!(g.is_null());
        assert!(!rp0_last_error().is_null());
        assert_eq!(rp0_group_gl(2, ptr::null_mut()), Rp0Status::NullPointer);
        let bad = CString::new("EIX").unwrap();
        assert_eq!(rp0_group_e7(bad.as_ptr(), &mut g), Rp0Status::InvalidInput);
        let msg = CStr::from_ptr(rp0_last_error()).to_str().unwrap();
        assert!(msg.contains("EIX"), "{msg}");
        let theta = CString::new(r#"{"rank":1,"coroots":[],"theta":[[2]]}"#).unwrap();
        assert_eq!(rp0_group_from_json(theta.as_ptr(), &mut g), Rp0Status::InvalidInput);
        let mut r = ptr::null_mut();
        assert_eq!(rp0_compute(ptr::null(), &mut r), Rp0Status::NullPointer);
        // success clears the message
        assert_eq!(rp0_group_gl(1, &mut g), Rp0Status::Ok);
        assert!(rp0_last_error().is_null());
        rp0_group_free(g);
        rp0_group_free(ptr::null_mut());
        rp0_result_free(ptr::null_mut());
        rp0_string_free(ptr::null_mut());
    }
}

#[test]
fn json_job_and_report() {
    unsafe {
        let job = CString::new(r#"{"rank":2,"coroots":[],"theta":[[0,-1],[-1,0]]}"#).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(rp0_group_from_json(job.as_ptr(), &mut g), Rp0Status::Ok);
        let r = compute(g);
        assert_eq!(orders(r), (1, 1));
        rp0_result_free(r);
        rp0_group_free(g);

        let job = CString::new(r#"{"preset":"GL","n":3,"outputs":["h1","oracle"]}"#).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(rp0_report_json(job.as_ptr(), 0, &mut out), Rp0Status::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        rp0_string_free(out);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["h1_order"], 2);
        assert_eq!(v["oracle"], "agree");
    }
}
