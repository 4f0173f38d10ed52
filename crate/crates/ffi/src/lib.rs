// SPDX-License-Identifier: Apache-2.0

//! C ABI over `qdescriptor`.
//!
//! Every function returns a [`QdStatus`]; results come back through out
//! pointers. Circuits and traces are opaque handles released with their
//! `_free` function, strings with [`qd_string_free`]. After a failure,
//! [`qd_last_error`] describes it (per thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdescriptor::foliation::{conditional_expectation, sharp_foliation, Verdict};
use qdescriptor::oracle::Oracle;
use qdescriptor::{
    build_branch_tree, build_report, parse_circuit, preset_fr, run_circuit, Circuit, Component, Error, Sign, Trace,
};

/// Opaque circuit handle.
pub struct QdCircuit {
    inner: Circuit,
}

/// Opaque handle to the descriptors at every slot boundary of a run.
pub struct QdTrace {
    inner: Trace,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    OutOfRange = 4,
    NotSharp = 5,
    ZeroWeight = 6,
    SizeCap = 7,
    Io = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdVerdict {
    Sharp = 0,
    AntiSharp = 1,
    NonSharp = 2,
    Unentangled = 3,
}

/// Foliation summary for an ordered (control, target) pair.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QdFoliation {
    pub verdict: QdVerdict,
    pub entangled: bool,
    /// `<P+[q_Cz]>`
    pub proj_plus: f64,
    pub proj_minus: f64,
    /// `<q_Cz q_Tz>`
    pub zz_product: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> QdStatus {
    match e {
        Error::Parse { .. } => QdStatus::Parse,
        Error::QubitOutOfRange { .. } => QdStatus::OutOfRange,
        Error::NotSharp { .. } => QdStatus::NotSharp,
        Error::ZeroWeight { .. } => QdStatus::ZeroWeight,
        Error::SizeCap { .. } => QdStatus::SizeCap,
        Error::Io(_) => QdStatus::Io,
        Error::Slot { source, .. } => status_of(source),
        Error::NotHermitian { .. } | Error::TraceMismatch(_) | Error::Json(_) => QdStatus::Internal,
        _ => QdStatus::InvalidArgument,
    }
}

struct Fail(QdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn fail(status: QdStatus, msg: &str) -> Fail {
    Fail(status, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QdStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QdStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(QdStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(QdStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn component(c: u32) -> Result<Component, Fail> {
    Component::ALL
        .get(c as usize)
        .copied()
        .ok_or_else(|| fail(QdStatus::InvalidArgument, "component must be 0 (x), 1 (y) or 2 (z)"))
}

fn sign(s: i32) -> Result<Sign, Fail> {
    match s {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err(fail(QdStatus::InvalidArgument, "sign must be +1 or -1")),
    }
}

fn state(trace: &QdTrace, time: usize) -> Result<&qdescriptor::NetworkState, Fail> {
    trace
        .inner
        .state(time)
        .ok_or_else(|| fail(QdStatus::OutOfRange, &format!("no slot boundary t={time}")))
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(QdStatus::Internal, "output contains a NUL byte"))
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses circuit text (NUL-terminated UTF-8).
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_circuit_parse(text: *const c_char, out: *mut *mut QdCircuit) -> QdStatus {
    guard(|| {
        let text = CStr::from_ptr(deref(text, "text")?)
            .to_str()
            .map_err(|_| fail(QdStatus::InvalidArgument, "text is not UTF-8"))?;
        let inner = parse_circuit(text)?;
        write(out, Box::into_raw(Box::new(QdCircuit { inner })))
    })
}

/// The built-in eight-qubit Frauchiger-Renner network.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_circuit_preset_fr(out: *mut *mut QdCircuit) -> QdStatus {
    guard(|| write(out, Box::into_raw(Box::new(QdCircuit { inner: preset_fr() }))))
}

/// # Safety
/// `circuit` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qd_circuit_free(circuit: *mut QdCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_circuit_n_qubits(circuit: *const QdCircuit, out: *mut usize) -> QdStatus {
    guard(|| write(out, deref(circuit, "circuit")?.inner.n_qubits()))
}

/// Propagates descriptors through every slot.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_run(circuit: *const QdCircuit, out: *mut *mut QdTrace) -> QdStatus {
    guard(|| {
        let inner = run_circuit(&deref(circuit, "circuit")?.inner)?;
        write(out, Box::into_raw(Box::new(QdTrace { inner })))
    })
}

/// # Safety
/// `trace` must come from [`qd_run`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qd_trace_free(trace: *mut QdTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Number of slot boundaries (`t = 0 .. n-1`).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_trace_n_times(trace: *const QdTrace, out: *mut usize) -> QdStatus {
    guard(|| write(out, deref(trace, "trace")?.inner.states().len()))
}

/// `<q_{qubit,component}>` at boundary `time`; component 0 = x, 1 = y, 2 = z.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_expectation(
    trace: *const QdTrace,
    time: usize,
    qubit: usize,
    component_index: u32,
    out: *mut f64,
) -> QdStatus {
    guard(|| {
        let s = state(deref(trace, "trace")?, time)?;
        write(out, s.expectation(qubit, component(component_index)?)?)
    })
}

/// `<P_sign[q_z]>` with `sign` = +1 or -1.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_projector(
    trace: *const QdTrace,
    time: usize,
    qubit: usize,
    sign_value: i32,
    out: *mut f64,
) -> QdStatus {
    guard(|| {
        let s = state(deref(trace, "trace")?, time)?;
        write(out, s.projector(qubit, sign(sign_value)?)?.vacuum_expectation()?)
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_foliation(
    trace: *const QdTrace,
    time: usize,
    control: usize,
    target: usize,
    tolerance: f64,
    out: *mut QdFoliation,
) -> QdStatus {
    guard(|| {
        let r = sharp_foliation(state(deref(trace, "trace")?, time)?, control, target, tolerance)?;
        let verdict = match r.verdict {
            Verdict::Sharp => QdVerdict::Sharp,
            Verdict::AntiSharp => QdVerdict::AntiSharp,
            Verdict::NonSharp => QdVerdict::NonSharp,
            Verdict::Unentangled => QdVerdict::Unentangled,
        };
        write(
            out,
            QdFoliation {
                verdict,
                entangled: r.witness.entangled,
                proj_plus: r.proj_plus,
                proj_minus: r.proj_minus,
                zz_product: r.zz_product,
            },
        )
    })
}

/// `<q_{target,component}>` conditioned on the control's `sign` branch.
/// Fails with `ZeroWeight` when that branch has no weight.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_conditional(
    trace: *const QdTrace,
    time: usize,
    target: usize,
    component_index: u32,
    control: usize,
    sign_value: i32,
    tolerance: f64,
    out: *mut f64,
) -> QdStatus {
    guard(|| {
        let s = state(deref(trace, "trace")?, time)?;
        let v = conditional_expectation(
            s,
            target,
            component(component_index)?,
            control,
            sign(sign_value)?,
            tolerance,
        )?;
        write(out, v)
    })
}

/// Trace as JSON. Release with [`qd_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_trace_to_json(trace: *const QdTrace, out: *mut *mut c_char) -> QdStatus {
    guard(|| write(out, owned_string(deref(trace, "trace")?.inner.to_json()?)?))
}

/// Per-gate summary table. Release with [`qd_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_report_table(trace: *const QdTrace, tolerance: f64, out: *mut *mut c_char) -> QdStatus {
    guard(|| {
        write(
            out,
            owned_string(build_report(&deref(trace, "trace")?.inner, tolerance)?.render())?,
        )
    })
}

unsafe fn tree_text(trace: *const QdTrace, tolerance: f64, out: *mut *mut c_char, json: bool) -> QdStatus {
    guard(|| {
        let trace = &deref(trace, "trace")?.inner;
        let tree = build_branch_tree(trace, &trace.circuit().interacting_pairs(), tolerance)?;
        let text = if json { tree.to_json()? } else { tree.to_dot() };
        write(out, owned_string(text)?)
    })
}

/// Branching tree over every interacting pair, as Graphviz DOT.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_tree_dot(trace: *const QdTrace, tolerance: f64, out: *mut *mut c_char) -> QdStatus {
    tree_text(trace, tolerance, out, false)
}

/// Branching tree over every interacting pair, as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_tree_json(trace: *const QdTrace, tolerance: f64, out: *mut *mut c_char) -> QdStatus {
    tree_text(trace, tolerance, out, true)
}

/// Largest engine-vs-dense-oracle deviations over the whole trace.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qd_cross_check(
    trace: *const QdTrace,
    cap: usize,
    expectation_dev: *mut f64,
    matrix_dev: *mut f64,
) -> QdStatus {
    guard(|| {
        let trace = &deref(trace, "trace")?.inner;
        let report = Oracle::new(cap).cross_check(trace, trace.circuit())?;
        write(expectation_dev, report.max_expectation_dev)?;
        write(matrix_dev, report.max_matrix_dev)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
