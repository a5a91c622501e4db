use std::ffi::{CStr, CString};
use std::ptr;

use screwline_ffi::*;

const W0: &str = r#"{"A":["1","0","-2"],"B":["0","4"],"C":["0","-1","0","1"],"D":["1","0","-2"]}"#;
const Q0: &str = r#"{"num":["1","0","-2"],"den":["0","-1","0","1"]}"#;

fn last_error() -> String {
    let p = screwline_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    screwline_string_free(p);
    s
}

#[test]
fn factorize_w0() {
    let w = CString::new(W0).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(screwline_factorize(w.as_ptr(), &mut h), ScrewlineStatus::Ok);
        assert!(screwline_last_error().is_null());
        assert_eq!(screwline_hamiltonian_segment_count(h), 3);
        let (mut len, mut theta) = (0.0, 0.0);
        let expect = [(0.5, std::f64::consts::FRAC_PI_2), (4.0, 0.0), (0.5, std::f64::consts::FRAC_PI_2)];
        for (k, (l, t)) in expect.iter().enumerate() {
            assert_eq!(screwline_hamiltonian_segment(h, k, &mut len, &mut theta), ScrewlineStatus::Ok);
            assert_eq!((len, theta), (*l, *t));
        }
        assert_eq!(screwline_hamiltonian_segment(h, 3, &mut len, &mut theta), ScrewlineStatus::InvalidInput);

        let mut out = ptr::null_mut();
        assert_eq!(screwline_hamiltonian_to_json(h, &mut out), ScrewlineStatus::Ok);
        let text = take_string(out);
        assert!(text.contains("\"pi/2\""), "{text}");

        // W(5, z) = W0(z); A(z) = 1 − 2z² at z = 1/2 is 1/2.
        let mut m = [0.0; 8];
        assert_eq!(screwline_fundamental_solution(h, 5.0, 0.5, 0.0, m.as_mut_ptr()), ScrewlineStatus::Ok);
        assert!((m[0] - 0.5).abs() < 1e-9 && m[1].abs() < 1e-12);
        // B(z) = 4z.
        assert!((m[2] - 2.0).abs() < 1e-9);
        assert_eq!(screwline_fundamental_solution(h, 6.0, 0.5, 0.0, m.as_mut_ptr()), ScrewlineStatus::InvalidInput);
        screwline_hamiltonian_free(h);
    }
}

#[test]
fn hamiltonian_json_round_trip() {
    let text = CString::new(r#"{"segments":[{"length":"1/2","theta":"pi/2"},{"length":"4","theta":"0"},{"length":"1/2","theta":"pi/2"}]}"#).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(screwline_hamiltonian_from_json(text.as_ptr(), &mut h), ScrewlineStatus::Ok);
        assert_eq!(screwline_hamiltonian_segment_count(h), 3);
        screwline_hamiltonian_free(h);
    }
}

#[test]
fn bad_inputs_map_to_codes() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(screwline_factorize(ptr::null(), &mut h), ScrewlineStatus::NullPointer);
        let w = CString::new(W0).unwrap();
        assert_eq!(screwline_factorize(w.as_ptr(), ptr::null_mut()), ScrewlineStatus::NullPointer);
        let junk = CString::new("{not json").unwrap();
        assert_eq!(screwline_factorize(junk.as_ptr(), &mut h), ScrewlineStatus::InvalidInput);
        assert!(last_error().contains("malformed JSON"));
        let bytes = [0xffu8, 0xfe, 0];
        assert_eq!(screwline_factorize(bytes.as_ptr().cast(), &mut h), ScrewlineStatus::InvalidUtf8);
        // det W ≠ 1.
        let bad = CString::new(r#"{"A":["2"],"B":["0"],"C":["0"],"D":["1"]}"#).unwrap();
        assert_eq!(screwline_factorize(bad.as_ptr(), &mut h), ScrewlineStatus::MathError);
        assert!(!last_error().is_empty());
        assert!(h.is_null());
        let name = CString::new("g1").unwrap();
        let mut rep = ptr::null_mut();
        assert_eq!(screwline_pipeline(name.as_ptr(), 0, 1.0, 100, &mut rep), ScrewlineStatus::InvalidInput);
        assert!(rep.is_null());
        // Null handles are tolerated by queries and frees.
        assert_eq!(screwline_hamiltonian_segment_count(ptr::null()), 0);
        assert!(!screwline_report_pass(ptr::null()));
        screwline_hamiltonian_free(ptr::null_mut());
        screwline_screw_free(ptr::null_mut());
        screwline_report_free(ptr::null_mut());
        screwline_string_free(ptr::null_mut());
    }
}

#[test]
fn string_of_q0() {
    let q = CString::new(Q0).unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        // Q0 itself is odd, not a string function.
        assert_eq!(screwline_string(q.as_ptr(), &mut out), ScrewlineStatus::MathError);
        let small = CString::new(r#"{"num":["1","-2"],"den":["0","-1","1"]}"#).unwrap();
        assert_eq!(screwline_string(small.as_ptr(), &mut out), ScrewlineStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["masses"], serde_json::json!([{"position": "0", "mass": "1/2"}, {"position": "4", "mass": "1/2"}]));
    }
}

#[test]
fn screw_g0() {
    unsafe {
        let g = screwline_screw_example_g0();
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(screwline_screw_eval(g, 1.5, &mut re, &mut im), ScrewlineStatus::Ok);
        assert!((re - (-1.125 + 1.5f64.cos() - 1.0)).abs() < 1e-12 && im.abs() < 1e-12);
        let (mut min, mut pass) = (0.0, false);
        assert_eq!(screwline_screw_pd_check(g, -6.0, 6.0, 40, 1e-9, &mut min, &mut pass), ScrewlineStatus::Ok);
        assert!(pass && min > -1e-9);
        assert_eq!(screwline_screw_pd_check(g, 1.0, -1.0, 40, 1e-9, &mut min, &mut pass), ScrewlineStatus::InvalidInput);
        screwline_screw_free(g);

        let text = CString::new(r#"{"g0":"0","c":"0","tau":[{"point":"0","mass":"1"},{"point":"1","mass":"1/2"},{"point":"-1","mass":"1/2"}]}"#).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(screwline_screw_from_json(text.as_ptr(), &mut g), ScrewlineStatus::Ok);
        assert_eq!(screwline_screw_eval(g, 1.5, &mut re, &mut im), ScrewlineStatus::Ok);
        assert!((re - (-1.125 + 1.5f64.cos() - 1.0)).abs() < 1e-12);
        screwline_screw_free(g);
    }
}

#[test]
fn pipeline_reports() {
    let name = CString::new("appendix").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(screwline_pipeline(name.as_ptr(), 0, 1.0, 100, &mut rep), ScrewlineStatus::Ok);
        assert!(screwline_report_pass(rep));
        assert!(screwline_report_check_count(rep) >= 10);
        let mut out = ptr::null_mut();
        assert_eq!(screwline_report_to_json(rep, &mut out), ScrewlineStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["pass"], true);
        screwline_report_free(rep);
    }
}
