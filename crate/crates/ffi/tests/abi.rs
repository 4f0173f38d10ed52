// SPDX-License-Identifier: Apache-2.0

use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qdescriptor_ffi::*;

const TOL: f64 = 1e-9;

fn fr_trace() -> *mut QdTrace {
    let mut circuit = ptr::null_mut();
    let mut trace = ptr::null_mut();
    unsafe {
        assert_eq!(qd_circuit_preset_fr(&mut circuit), QdStatus::Ok);
        assert_eq!(qd_run(circuit, &mut trace), QdStatus::Ok);
        qd_circuit_free(circuit);
    }
    trace
}

fn take(s: *mut c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qd_string_free(s) };
    text
}

fn last_error() -> String {
    let p = qd_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn expectations_and_foliations() {
    let trace = fr_trace();
    unsafe {
        let mut n = 0;
        assert_eq!(qd_trace_n_times(trace, &mut n), QdStatus::Ok);
        assert_eq!(n, 8);
        let mut v = 0.0;
        assert_eq!(qd_expectation(trace, 1, 0, 2, &mut v), QdStatus::Ok);
        assert!((v + 1.0 / 3.0).abs() < TOL);
        assert_eq!(qd_projector(trace, 7, 0, 1, &mut v), QdStatus::Ok);
        assert!((v - 5.0 / 6.0).abs() < TOL);

        let mut f = QdFoliation {
            verdict: QdVerdict::Unentangled,
            entangled: false,
            proj_plus: 0.0,
            proj_minus: 0.0,
            zz_product: 0.0,
        };
        assert_eq!(qd_foliation(trace, 3, 1, 2, TOL, &mut f), QdStatus::Ok);
        assert_eq!(f.verdict, QdVerdict::NonSharp);
        assert!(f.entangled);
        assert!((f.zz_product - 1.0 / 3.0).abs() < TOL);

        assert_eq!(qd_conditional(trace, 2, 1, 2, 0, -1, TOL, &mut v), QdStatus::Ok);
        assert!((v + 1.0).abs() < TOL);
        assert_eq!(qd_conditional(trace, 7, 5, 2, 1, -1, TOL, &mut v), QdStatus::ZeroWeight);
        assert!(last_error().contains("zero weight"));
        qd_trace_free(trace);
    }
}

#[test]
fn text_outputs() {
    let trace = fr_trace();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qd_report_table(trace, TOL, &mut s), QdStatus::Ok);
        assert_eq!(take(s).lines().count(), 14);
        assert_eq!(qd_trace_to_json(trace, &mut s), QdStatus::Ok);
        assert!(take(s).contains("\"format_version\": 1"));
        assert_eq!(qd_tree_dot(trace, TOL, &mut s), QdStatus::Ok);
        assert!(take(s).starts_with("// format_version 1"));
        assert_eq!(qd_tree_json(trace, TOL, &mut s), QdStatus::Ok);
        assert!(take(s).contains("created-sharp"));
        let (mut e, mut m) = (1.0, 1.0);
        assert_eq!(qd_cross_check(trace, 12, &mut e, &mut m), QdStatus::Ok);
        assert!(e <= TOL && m <= TOL);
        assert_eq!(qd_cross_check(trace, 4, &mut e, &mut m), QdStatus::SizeCap);
        qd_trace_free(trace);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut circuit = ptr::null_mut();
        let bad = CString::new("qubits 2\ncx 0 0\n").unwrap();
        assert_eq!(qd_circuit_parse(bad.as_ptr(), &mut circuit), QdStatus::Parse);
        assert!(last_error().contains("line 2"));
        assert!(circuit.is_null());
        assert_eq!(qd_circuit_parse(ptr::null(), &mut circuit), QdStatus::NullPointer);

        let good = CString::new("qubits 2\nry 0 pi/2\ncx 0 1\n").unwrap();
        assert_eq!(qd_circuit_parse(good.as_ptr(), &mut circuit), QdStatus::Ok);
        assert!(qd_last_error().is_null());
        let mut n = 0;
        assert_eq!(qd_circuit_n_qubits(circuit, &mut n), QdStatus::Ok);
        assert_eq!(n, 2);
        let mut trace = ptr::null_mut();
        assert_eq!(qd_run(circuit, &mut trace), QdStatus::Ok);
        let mut v = 0.0;
        assert_eq!(qd_expectation(trace, 9, 0, 2, &mut v), QdStatus::OutOfRange);
        assert_eq!(qd_expectation(trace, 0, 5, 2, &mut v), QdStatus::OutOfRange);
        assert_eq!(qd_expectation(trace, 0, 0, 3, &mut v), QdStatus::InvalidArgument);
        assert_eq!(qd_projector(trace, 0, 0, 0, &mut v), QdStatus::InvalidArgument);
        assert_eq!(qd_expectation(trace, 0, 0, 2, ptr::null_mut()), QdStatus::NullPointer);
        qd_trace_free(trace);
        qd_circuit_free(circuit);
        qd_trace_free(ptr::null_mut());
        qd_circuit_free(ptr::null_mut());
        qd_string_free(ptr::null_mut());
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qdescriptor.h")
}

fn have_cc() -> bool {
    Command::new("cc")
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success())
}

#[test]
fn header_declares_the_abi() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct QdCircuit QdCircuit;",
        "typedef struct QdTrace QdTrace;",
        "QD_STATUS_ZERO_WEIGHT = 6",
        "qd_circuit_parse(",
        "qd_run(",
        "qd_foliation(",
        "qd_conditional(",
        "qd_cross_check(",
        "qd_string_free(",
        "qd_last_error(void)",
    ] {
        assert!(text.contains(name), "{name}");
    }
    if !have_cc() {
        eprintln!("cc not found; skipping header compile check");
        return;
    }
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(header())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("cc not found; skipping C smoke test");
        return;
    }
    let lib_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    if !lib_dir.join("libqdescriptor_ffi.so").exists() {
        eprintln!("shared library not found in {}; skipping", lib_dir.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "qdescriptor.h"
int main(void) {
    QdCircuit *c = NULL;
    QdTrace *t = NULL;
    QdFoliation f;
    if (qd_circuit_preset_fr(&c) != QD_STATUS_OK) return 1;
    if (qd_run(c, &t) != QD_STATUS_OK) return 2;
    if (qd_foliation(t, 2, 0, 1, 1e-9, &f) != QD_STATUS_OK) return 3;
    if (f.verdict != QD_VERDICT_SHARP) return 4;
    printf("%.6f\n", f.proj_plus);
    qd_trace_free(t);
    qd_circuit_free(c);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg("-L")
        .arg(&lib_dir)
        .args(["-lqdescriptor_ffi", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).env("LD_LIBRARY_PATH", &lib_dir).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "0.333333");
}
