//! C ABI over the galois-qudit core.
//!
//! Objects are opaque handles created by `gq_*_new` (or `_from_json`) and
//! released with the matching `gq_*_free`. Every fallible call returns a
//! [`GqStatus`]; on failure a message is kept per thread and can be fetched
//! with [`gq_last_error_message`]. Strings handed out by the library must be
//! released with [`gq_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use galois_qudit::css::Distance;
use galois_qudit::gates::{build_gate, hierarchy_level, GateKind, HierarchyLevel};
use galois_qudit::io::{tableau_from_json, tableau_to_json, CodeJson};
use galois_qudit::q2b::{convert_code, default_assignment, end_to_end_decode, ErrorType, MeasurementPlan, QubitBundle};
use galois_qudit::{find_self_dual, verify, CssTableau, Field, GqError, PauliWord, QrsCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InvalidField = 4,
    NotCommuting = 5,
    DecodeFailure = 6,
    Parse = 7,
    TooLarge = 8,
    BufferTooSmall = 9,
    Internal = 10,
    Panic = 11,
}

/// Error type for [`gq_qrs_decode`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GqErrorKind {
    X = 0,
    Z = 1,
}

/// Distances are `-1` when enumeration exceeded the budget and `-2` when the
/// code has no logical operators.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GqCodeParams {
    pub n: u64,
    pub k: u64,
    pub d_x: i64,
    pub d_z: i64,
    pub d: i64,
}

pub struct GqField(Field);
pub struct GqQrs(QrsCode);
pub struct GqTableau(CssTableau);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &GqError) -> GqStatus {
    match e {
        GqError::IrreducibleRequired(_)
        | GqError::UnsupportedDegree(_)
        | GqError::InvalidPolynomial(_)
        | GqError::FieldMismatch(..) => GqStatus::InvalidField,
        GqError::DimensionMismatch(_) => GqStatus::DimensionMismatch,
        GqError::NotCommuting(_) => GqStatus::NotCommuting,
        GqError::DecodeFailure => GqStatus::DecodeFailure,
        GqError::Parse(_) | GqError::Io(_) => GqStatus::Parse,
        GqError::TooLarge { .. } => GqStatus::TooLarge,
        GqError::Internal(_) => GqStatus::Internal,
        _ => GqStatus::InvalidArgument,
    }
}

struct Fail(GqStatus, String);

impl From<GqError> for Fail {
    fn from(e: GqError) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GqStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GqStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside galois-qudit".into());
            GqStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(GqStatus::Parse, format!("{what} is not valid UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(GqStatus::Internal, "string contains a NUL byte".into()))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
#[no_mangle]
pub unsafe extern "C" fn gq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Field with the given irreducible modulus (bitmask, e.g. 11 for x^3+x+1).
#[no_mangle]
pub unsafe extern "C" fn gq_field_new(modulus: u64, out: *mut *mut GqField) -> GqStatus {
    guard(|| {
        let f = Field::from_modulus(modulus)?;
        write_out(out, Box::into_raw(Box::new(GqField(f))), "out")
    })
}

/// Field of order `q` with the canonical modulus.
#[no_mangle]
pub unsafe extern "C" fn gq_field_with_order(q: u64, out: *mut *mut GqField) -> GqStatus {
    guard(|| {
        let f = Field::with_order(q)?;
        write_out(out, Box::into_raw(Box::new(GqField(f))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_field_free(f: *mut GqField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Order of the field, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gq_field_order(f: *const GqField) -> u64 {
    f.as_ref().map_or(0, |f| f.0.q() as u64)
}

/// Degree `s` of the field over F_2, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn gq_field_degree(f: *const GqField) -> u32 {
    f.as_ref().map_or(0, |f| f.0.s())
}

#[no_mangle]
pub unsafe extern "C" fn gq_field_mul(f: *const GqField, a: u32, b: u32, out: *mut u32) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        f.check(a)?;
        f.check(b)?;
        write_out(out, f.mul(a, b), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_field_inv(f: *const GqField, a: u32, out: *mut u32) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        f.check(a)?;
        write_out(out, f.inv(a)?, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_field_trace(f: *const GqField, a: u32, out: *mut u32) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        f.check(a)?;
        write_out(out, f.trace(a), "out")
    })
}

/// Writes the `s` elements of a self-dual basis into `out` (capacity `cap`).
#[no_mangle]
pub unsafe extern "C" fn gq_self_dual_basis(f: *const GqField, out: *mut u32, cap: usize) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        let b = find_self_dual(f)?;
        if cap < b.len() {
            return Err(Fail(GqStatus::BufferTooSmall, format!("need room for {} elements", b.len())));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, b.len()).copy_from_slice(b.elements());
        Ok(())
    })
}

/// QRS code with the first `n` field elements as evaluation points and unit
/// multipliers.
#[no_mangle]
pub unsafe extern "C" fn gq_qrs_new(
    f: *const GqField,
    n: usize,
    k1: usize,
    k2: usize,
    out: *mut *mut GqQrs,
) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        let code = QrsCode::standard(f, n, k1, k2)?;
        write_out(out, Box::into_raw(Box::new(GqQrs(code))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_qrs_free(c: *mut GqQrs) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

fn distance_code(d: Distance) -> i64 {
    match d {
        Distance::Exact(v) => v as i64,
        Distance::NotComputed => -1,
        Distance::NotApplicable => -2,
    }
}

/// Brute-force parameters; `budget` caps the codewords enumerated per distance.
#[no_mangle]
pub unsafe extern "C" fn gq_qrs_params(c: *const GqQrs, budget: u64, out: *mut GqCodeParams) -> GqStatus {
    guard(|| {
        let p = as_ref(c, "code")?.0.css.params(budget);
        let v = GqCodeParams {
            n: p.n as u64,
            k: p.k as u64,
            d_x: distance_code(p.d_x),
            d_z: distance_code(p.d_z),
            d: distance_code(p.d),
        };
        write_out(out, v, "out")
    })
}

/// Code JSON (`q`, `modulus`, `n`, `gx`, `gz`, `qrs`).
#[no_mangle]
pub unsafe extern "C" fn gq_qrs_to_json(c: *const GqQrs, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let code = &as_ref(c, "code")?.0;
        let s = serde_json::to_string(&CodeJson::from_qrs(code)).map_err(GqError::from)?;
        write_out(out, to_c_string(s)?, "out")
    })
}

/// Qubit conversion bundle (`qudit_code`, `basis_assignment`, `hx`, `hz`) with
/// the self-dual basis on every qudit.
#[no_mangle]
pub unsafe extern "C" fn gq_qrs_to_qubits_json(c: *const GqQrs, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let code = &as_ref(c, "code")?.0;
        let bases = default_assignment(code.field(), code.n())?;
        let qubits = convert_code(&code.css, &bases)?;
        let bundle = QubitBundle::new(CodeJson::from_qrs(code), &bases, &qubits);
        let s = serde_json::to_string(&bundle).map_err(GqError::from)?;
        write_out(out, to_c_string(s)?, "out")
    })
}

/// Decodes a qubit error of length `n·s` through the qubit syndrome; writes
/// the estimate into `out` (same length).
#[no_mangle]
pub unsafe extern "C" fn gq_qrs_decode(
    c: *const GqQrs,
    kind: GqErrorKind,
    error: *const u8,
    len: usize,
    out: *mut u8,
) -> GqStatus {
    guard(|| {
        let code = &as_ref(c, "code")?.0;
        let e: Vec<u32> = slice(error, len, "error")?.iter().map(|&b| u32::from(b)).collect();
        if e.iter().any(|&b| b > 1) {
            return Err(Fail(GqStatus::InvalidArgument, "error bits must be 0 or 1".into()));
        }
        let bases = default_assignment(code.field(), code.n())?;
        let plan = MeasurementPlan::default_for(&code.css)?;
        let kind = match kind {
            GqErrorKind::X => ErrorType::X,
            GqErrorKind::Z => ErrorType::Z,
        };
        let est = end_to_end_decode(code, &bases, &plan, &e, kind)?;
        if out.is_null() && len > 0 {
            return Err(null("out"));
        }
        for (i, b) in est.into_iter().enumerate() {
            out.add(i).write(b as u8);
        }
        Ok(())
    })
}

/// Tableau from JSON (`q`, `modulus`, `xrows`, `zrows`, `xsyn`, `zsyn`).
#[no_mangle]
pub unsafe extern "C" fn gq_tableau_from_json(json: *const c_char, out: *mut *mut GqTableau) -> GqStatus {
    guard(|| {
        let t = tableau_from_json(c_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(GqTableau(t))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_tableau_to_json(t: *const GqTableau, out: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let t = &as_ref(t, "tableau")?.0;
        write_out(out, to_c_string(tableau_to_json(t))?, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn gq_tableau_free(t: *mut GqTableau) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Measures the pure Pauli `X^w` (or `Z^w` when `z_type`) and updates the
/// tableau in place. Random outcomes are drawn from a generator seeded with
/// `seed`.
#[no_mangle]
pub unsafe extern "C" fn gq_tableau_measure(
    t: *mut GqTableau,
    z_type: bool,
    w: *const u32,
    len: usize,
    seed: u64,
    outcome: *mut u32,
    deterministic: *mut bool,
) -> GqStatus {
    guard(|| {
        let t = t.as_mut().ok_or_else(|| null("tableau"))?;
        let w = slice(w, len, "w")?.to_vec();
        let f = t.0.field().clone();
        let p = if z_type { PauliWord::z_type(&f, w)? } else { PauliWord::x_type(&f, w)? };
        let m = t.0.measure(&p, &mut ChaCha8Rng::seed_from_u64(seed))?;
        write_out(outcome, m.outcome, "outcome")?;
        write_out(deterministic, m.deterministic, "deterministic")?;
        t.0 = m.tableau;
        Ok(())
    })
}

/// Hierarchy level of a named gate (`x`, `z`, `hadamard`, `mult`, `cnot`,
/// `ccz`, `multi_cz`, `u_n`, `s`, `t`). `param` is β, γ or δ; `count` is the
/// qudit count for `multi_cz` or the exponent for `u_n` (ignored otherwise).
/// Writes `-1` when the level exceeds `max_level`.
#[no_mangle]
pub unsafe extern "C" fn gq_hierarchy_level(
    f: *const GqField,
    gate: *const c_char,
    param: u32,
    count: u32,
    max_level: u32,
    out: *mut i32,
) -> GqStatus {
    guard(|| {
        let f = &as_ref(f, "field")?.0;
        let kind = GateKind::parse(c_str(gate, "gate")?, param, Some(count))?;
        let rep = hierarchy_level(&build_gate(f, kind)?, max_level, &kind.name())?;
        let level = match rep.level {
            HierarchyLevel::Exact(k) => k as i32,
            HierarchyLevel::AboveMax => -1,
        };
        write_out(out, level, "out")
    })
}

/// Runs the acceptance suite; `report` (optional) receives the JSON report.
#[no_mangle]
pub unsafe extern "C" fn gq_verify_all(seed: u64, passed: *mut bool, report: *mut *mut c_char) -> GqStatus {
    guard(|| {
        let r = verify::run_all(seed);
        write_out(passed, r.passed, "passed")?;
        if !report.is_null() {
            report.write(to_c_string(r.to_json())?);
        }
        Ok(())
    })
}
