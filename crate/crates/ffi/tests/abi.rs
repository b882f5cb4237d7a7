use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use bessel_radii_ffi::*;

fn evaluator(family: u32, nu: f64) -> *mut BrEvaluator {
    let mut ev = ptr::null_mut();
    assert_eq!(unsafe { br_evaluator_new(family, nu, &mut ev) }, BrStatus::Ok);
    assert!(!ev.is_null());
    ev
}

#[test]
fn radius_round_trip() {
    let ev = evaluator(BR_FAMILY_G, 0.5);
    let mut cap = 0.0;
    assert_eq!(unsafe { br_evaluator_cap(ev, &mut cap) }, BrStatus::Ok);
    assert!((cap - std::f64::consts::FRAC_PI_2).abs() < 1e-13);

    let mut out = BrRadius::default();
    assert_eq!(unsafe { br_radius(ev, 0.0, 0.0, 1e-12, &mut out) }, BrStatus::Ok);
    assert!((out.radius - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert!(out.iterations > 0);

    let mut v = 0.0;
    assert_eq!(unsafe { br_eval(ev, 0.0, std::f64::consts::FRAC_PI_4, &mut v) }, BrStatus::Ok);
    assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-15);

    let (mut zs, mut hw) = (0.0, 0.0);
    assert_eq!(unsafe { br_eval_zero_sum(ev, 0.5, 1.0, 500, &mut zs, &mut hw) }, BrStatus::Ok);
    let mut rf = 0.0;
    assert_eq!(unsafe { br_eval(ev, 0.5, 1.0, &mut rf) }, BrStatus::Ok);
    assert!((zs - rf).abs() < 1e-8 && hw > 0.0);
    unsafe { br_evaluator_free(ev) };
}

#[test]
fn status_codes() {
    let mut ev = ptr::null_mut();
    assert_eq!(unsafe { br_evaluator_new(BR_FAMILY_F, 1e-4, &mut ev) }, BrStatus::InvalidOrder);
    assert!(ev.is_null());
    assert_eq!(unsafe { br_evaluator_new(7, 1.0, &mut ev) }, BrStatus::InvalidParameter);
    assert_eq!(unsafe { br_evaluator_new(BR_FAMILY_F, 1.0, ptr::null_mut()) }, BrStatus::NullPointer);

    let ev = evaluator(BR_FAMILY_H, -0.5);
    let mut v = 0.0;
    assert_eq!(unsafe { br_eval(ev, 0.5, 2.0, &mut v) }, BrStatus::OutOfInterval);
    assert_eq!(unsafe { br_eval(ev, 0.5, 0.5, ptr::null_mut()) }, BrStatus::NullPointer);
    assert_eq!(unsafe { br_eval(ptr::null(), 0.5, 0.5, &mut v) }, BrStatus::NullPointer);
    let mut r = BrRadius::default();
    assert_eq!(unsafe { br_radius(ev, 0.5, 1.0, 1e-12, &mut r) }, BrStatus::InvalidParameter);
    unsafe { br_evaluator_free(ev) };
    unsafe { br_evaluator_free(ptr::null_mut()) };

    let msg = unsafe { CStr::from_ptr(br_status_message(BrStatus::BufferTooSmall)) };
    assert_eq!(msg.to_str().unwrap(), "output buffer too small");
}

#[test]
fn zeros_into_buffer() {
    let mut buf = [0.0; 4];
    let s = unsafe { br_zeros(BR_ZEROS_J, 0.5, 4, 1e-15, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(s, BrStatus::Ok);
    for (n, z) in buf.iter().enumerate() {
        assert!((z - (n + 1) as f64 * std::f64::consts::PI).abs() < 1e-13);
    }
    let s = unsafe { br_zeros(BR_ZEROS_J, 0.5, 5, 1e-15, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(s, BrStatus::BufferTooSmall);
    let s = unsafe { br_zeros(9, 0.5, 1, 1e-15, buf.as_mut_ptr(), buf.len()) };
    assert_eq!(s, BrStatus::InvalidParameter);
}

#[test]
fn bessel_j_values() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { br_bessel_j(1.0, 1.0, 0.0, &mut re, &mut im) }, BrStatus::Ok);
    assert!((re - 0.440_050_585_744_933_5).abs() < 1e-15 && im == 0.0);
    assert_eq!(unsafe { br_bessel_j(-0.5, 0.0, 0.0, &mut re, &mut im) }, BrStatus::ZeroArgument);
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("bessel_radii.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "br_evaluator_new",
        "br_evaluator_free",
        "br_evaluator_cap",
        "br_eval",
        "br_eval_zero_sum",
        "br_radius",
        "br_zeros",
        "br_bessel_j",
        "br_status_message",
        "typedef struct BrEvaluator BrEvaluator",
        "BR_STATUS_OK = 0",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "bessel_radii.h"

int main(void) {
    BrEvaluator *ev = NULL;
    if (br_evaluator_new(BR_FAMILY_F, 1.0, &ev) != BR_STATUS_OK) return 1;
    BrRadius r;
    BrStatus s = br_radius(ev, 0.5, 0.45, 1e-12, &r);
    if (s != BR_STATUS_OK) { fprintf(stderr, "%s\n", br_status_message(s)); return 2; }
    br_evaluator_free(ev);
    printf("%.15g\n", r.radius);
    return fabs(r.radius - 0.947509043267924) < 1e-10 ? 0 : 3;
}
"#;

/// Compiles and runs a C client against the header and the static library.
#[test]
fn c_client_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libbessel_radii_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("bessel-radii-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    assert!(out.status.success(), "client exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("0.94750904326"));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
