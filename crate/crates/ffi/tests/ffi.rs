use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hilbert_cones_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { hc_string_free(p) };
    s
}

fn series(json: &str) -> *mut HcSeries {
    let c = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hc_series_from_json(c.as_ptr(), &mut out) }, HcStatus::Ok);
    out
}

fn last_error() -> String {
    let p = hc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

// h(j) = 3j + 1 in four variables
const LINEAR: &str = r#"{"den_exp":2,"numer":["1","2"]}"#;

#[test]
fn json_round_trip_and_coefficients() {
    let g = series(r#"{"den_exp":3,"numer":["1","0","-1"]}"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hc_series_to_json(g, &mut out) }, HcStatus::Ok);
    // canonical form divides out the common factor 1 - t
    assert_eq!(take_string(out), r#"{"den_exp":2,"numer":["1","1"]}"#);
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hc_series_coeff(g, 4, &mut c) }, HcStatus::Ok);
    assert_eq!(take_string(c), "9");
    unsafe { hc_series_free(g) };
}

#[test]
fn apply_t_is_diagonal() {
    // T[1/(1-t)] = 3/(1-t) for n = 3
    let g = series(r#"{"den_exp":1,"numer":["1"]}"#);
    let mut tg = ptr::null_mut();
    assert_eq!(unsafe { hc_series_apply_t(g, 3, &mut tg) }, HcStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hc_series_to_json(tg, &mut out) }, HcStatus::Ok);
    assert_eq!(take_string(out), r#"{"den_exp":1,"numer":["3"]}"#);
    unsafe {
        hc_series_free(tg);
        hc_series_free(g);
    }
}

#[test]
fn membership_and_certificates() {
    let g = series(LINEAR);
    let mut member = -1;
    let mut cert = ptr::null_mut();
    let status = unsafe { hc_membership(g, b'R' as c_char, 3, 2, &mut member, &mut cert) };
    assert_eq!(status, HcStatus::Ok);
    assert_eq!(member, 1);
    assert_eq!(take_string(cert), r#"{"member":true}"#);

    let neg = series(r#"{"den_exp":0,"numer":["-1"]}"#);
    let status = unsafe { hc_membership(neg, b'P' as c_char, 1, 0, &mut member, &mut cert) };
    assert_eq!(status, HcStatus::Ok);
    assert_eq!(member, 0);
    assert_eq!(
        take_string(cert),
        r#"{"member":false,"violation":{"kind":"coefficient","index":0}}"#
    );

    let status = unsafe { hc_membership(g, b'X' as c_char, 3, 2, &mut member, ptr::null_mut()) };
    assert_eq!(status, HcStatus::Domain);
    assert!(last_error().contains("cone"));
    // outside V(3, -3)
    let status = unsafe { hc_membership(g, b'P' as c_char, 3, -3, &mut member, ptr::null_mut()) };
    assert_eq!(status, HcStatus::Domain);
    unsafe {
        hc_series_free(g);
        hc_series_free(neg);
    }
}

#[test]
fn decomposition_and_betti_bounds() {
    let g = series(LINEAR);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hc_r_decompose(g, 3, 2, &mut out) }, HcStatus::Ok);
    assert_eq!(take_string(out), r#"["0","3/10","0","1/5","1/2","0"]"#);
    assert_eq!(unsafe { hc_betti_bounds(g, 3, 1, &mut out) }, HcStatus::Ok);
    assert_eq!(take_string(out), r#"{"rows":{"0":{"0":"1"},"1":{"1":"3","2":"2"}}}"#);
    assert_eq!(unsafe { hc_betti_bounds(g, 3, 0, &mut out) }, HcStatus::Domain);
    assert!(last_error().contains("not in R"));
    unsafe { hc_series_free(g) };
}

#[test]
fn monomial_quotient() {
    let gens = [2u32, 0, 1, 1];
    let mut h = 0u64;
    let values: Vec<u64> = (0..5)
        .map(|j| {
            assert_eq!(unsafe { hc_hf_monomial_quotient(2, gens.as_ptr(), 2, j, &mut h) }, HcStatus::Ok);
            h
        })
        .collect();
    assert_eq!(values, vec![1, 2, 1, 1, 1]);
    assert_eq!(unsafe { hc_hf_monomial_quotient(2, ptr::null(), 0, 3, &mut h) }, HcStatus::Ok);
    assert_eq!(h, 4);
    assert_eq!(unsafe { hc_hf_monomial_quotient(2, ptr::null(), 1, 3, &mut h) }, HcStatus::NullPointer);
    assert_eq!(unsafe { hc_hf_monomial_quotient(0, ptr::null(), 0, 3, &mut h) }, HcStatus::Domain);
}

#[test]
fn error_paths() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hc_series_from_json(ptr::null(), &mut out) }, HcStatus::NullPointer);
    let bad = CString::new("{\"den_exp\":1,").unwrap();
    assert_eq!(unsafe { hc_series_from_json(bad.as_ptr(), &mut out) }, HcStatus::Parse);
    assert!(last_error().contains("line 1"));
    let invalid = [0xffu8, 0];
    let status = unsafe { hc_series_from_json(invalid.as_ptr() as *const c_char, &mut out) };
    assert_eq!(status, HcStatus::InvalidUtf8);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hc_series_coeff(ptr::null(), 0, &mut s) }, HcStatus::NullPointer);
    // success clears the error
    let g = series(LINEAR);
    assert!(hc_last_error().is_null());
    unsafe {
        hc_series_free(g);
        hc_series_free(ptr::null_mut());
        hc_string_free(ptr::null_mut());
    }
}

fn c_compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()))
}

/// The static library built alongside this test binary. Cargo rebuilds the
/// copy in `deps` for tests; the uplifted copy next to it may be stale.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let deps = exe.parent()?;
    [deps.join("libhilbert_cones_ffi.a"), deps.parent()?.join("libhilbert_cones_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
}

#[test]
fn header_compiles_and_links_from_c() {
    let Some(cc) = c_compiler() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = root.join("include");
    let source = root.join("tests/c/smoke.c");
    let dir = std::env::temp_dir().join(format!("hc-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let object = dir.join("smoke.o");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Wextra", "-Werror", "-c"])
        .arg("-I")
        .arg(&include)
        .arg(&source)
        .arg("-o")
        .arg(&object)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test does not compile against the header");

    let Some(lib) = static_lib() else {
        eprintln!("static library not found, skipping link step");
        return;
    };
    let binary = dir.join("smoke");
    let status = Command::new(cc)
        .arg(&object)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&binary)
        .status()
        .unwrap();
    assert!(status.success(), "linking against {} failed", lib.display());
    let run = Command::new(&binary).output().unwrap();
    assert!(run.status.success(), "C smoke test exited with {:?}", run.status);
    assert_eq!(
        String::from_utf8_lossy(&run.stdout).trim(),
        r#"{"rows":{"0":{"0":"1"},"1":{"1":"3","2":"2"}}}"#
    );
    let _ = std::fs::remove_dir_all(&dir);
}
