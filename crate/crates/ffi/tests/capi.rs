use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qchihara_ffi::*;

fn last_error() -> String {
    let p = qch_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn densities_and_errors() {
    let mut d = 0.0;
    unsafe {
        assert_eq!(qch_density_qhermite(0.0, 0.0, &mut d), QchStatus::Ok);
        assert!((d - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
        assert_eq!(qch_density_asc(0.1, 0.4, 0.49, 0.5, &mut d), QchStatus::Ok);
        let asc = d;
        assert_eq!(qch_density_mu(0.1, 0.7, 0.4 / 0.7, 0.5, &mut d), QchStatus::Ok);
        assert!((asc - d).abs() < 1e-12);
        assert_eq!(qch_poisson_mehler(0.0, 0.0, 0.0, 0.5, &mut d), QchStatus::Ok);
        assert_eq!(d, 1.0);
        assert_eq!(qch_density_qhermite(0.0, 1.0, &mut d), QchStatus::Domain);
        assert!(last_error().contains("|q| < 1"));
        assert_eq!(qch_density_qhermite(0.0, 0.0, ptr::null_mut()), QchStatus::NullPointer);
    }
}

#[test]
fn polynomial_handles() {
    unsafe {
        let mut h = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(qch_poly_family(QchFamily::Hermite, 3, &mut h), QchStatus::Ok);
        assert_eq!(qch_poly_family(QchFamily::B, 3, &mut b), QchStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(qch_poly_render(h, &mut text), QchStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "x^3 - q*x - 2*x");
        qch_string_free(text);

        let vals = [0.5, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut v = 0.0;
        assert_eq!(qch_poly_eval(h, vals.as_ptr(), &mut v), QchStatus::Ok);
        assert!((v - (1.0 - 2.5)).abs() < 1e-15);

        let mut diff = ptr::null_mut();
        let mut zero = -1;
        assert_eq!(qch_poly_sub(h, h, &mut diff), QchStatus::Ok);
        assert_eq!(qch_poly_is_zero(diff, &mut zero), QchStatus::Ok);
        assert_eq!(zero, 1);
        let mut prod = ptr::null_mut();
        assert_eq!(qch_poly_mul(h, b, &mut prod), QchStatus::Ok);
        assert_eq!(qch_poly_is_zero(prod, &mut zero), QchStatus::Ok);
        assert_eq!(zero, 0);
        assert_eq!(qch_poly_mul(h, ptr::null(), &mut prod), QchStatus::NullPointer);
        for p in [h, b, diff, prod] {
            qch_poly_free(p);
        }
        qch_poly_free(ptr::null_mut());
    }
}

#[test]
fn discrete_measure_handle() {
    unsafe {
        let mut mu = ptr::null_mut();
        assert_eq!(qch_discrete_measure_new(2.0, 1, 0.0, 0, &mut mu), QchStatus::Ok);
        assert_eq!(qch_discrete_measure_len(mu), 2);
        let (mut x, mut w) = ([0.0; 2], [0.0; 2]);
        assert_eq!(qch_discrete_measure_copy(mu, x.as_mut_ptr(), w.as_mut_ptr(), 1), QchStatus::InvalidArgument);
        assert_eq!(qch_discrete_measure_copy(mu, x.as_mut_ptr(), w.as_mut_ptr(), 2), QchStatus::Ok);
        assert!((x[1] - 0.5f64.sqrt()).abs() < 1e-14 && (w[0] - 0.5).abs() < 1e-14);
        let mut json = ptr::null_mut();
        assert_eq!(qch_discrete_measure_to_json(mu, &mut json), QchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["params"]["m"], 1);
        qch_string_free(json);
        qch_discrete_measure_free(mu);

        assert_eq!(qch_discrete_measure_new(0.5, 1, 0.0, 0, &mut mu), QchStatus::InvalidArgument);
        assert_eq!(qch_discrete_measure_len(ptr::null()), 0);
    }
}

#[test]
fn verify_suite_json() {
    unsafe {
        let name = CString::new("hankel").unwrap();
        let mut json = ptr::null_mut();
        assert_eq!(qch_verify_suite(name.as_ptr(), 3, &mut json), QchStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
        assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
        qch_string_free(json);

        let bad = CString::new("nope").unwrap();
        assert_eq!(qch_verify_suite(bad.as_ptr(), 0, &mut json), QchStatus::InvalidArgument);
        assert!(last_error().contains("nope"));
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qch_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compile and run the C example against the static library, when a C
/// compiler is on the path.
#[test]
fn c_smoke_program() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libqchihara_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qchihara_smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));
}
