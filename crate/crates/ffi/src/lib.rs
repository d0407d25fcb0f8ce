//! C interface to `holonomic`.
//!
//! Every fallible call returns a [`HoloStatus`] and writes its result through an
//! out pointer. On failure [`holo_last_error`] describes what went wrong on the
//! calling thread. Strings returned by the library must be released with
//! [`holo_string_free`]; handles with their matching `_free` function.

use holonomic::algebraic::{algeq_to_diffeq, series_from_algeq};
use holonomic::arith::Rational;
use holonomic::closure::{diffeq_add, diffeq_mul, rec_add, rec_mul};
use holonomic::convert::{diffeq_to_rec, homogenize_diffeq, homogenize_rec, rec_to_diffeq};
use holonomic::eval::{nth_term, series_from_diffeq, unroll};
use holonomic::guess::{guess_algeq, guess_diffeq, guess_rec, GuessConfig};
use holonomic::io::{format_relation, parse_operator_text, parse_relation, parse_sequence, OutputMode};
use holonomic::ore::{gcrd, lclm, OreOperator};
use holonomic::relation::Relation;
use holonomic::HoloError;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoloStatus {
    Ok = 0,
    NoRelation = 2,
    ParseError = 3,
    InvalidInput = 4,
    Internal = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoloGuessKind {
    Rec = 0,
    Ode = 1,
    Alg = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoloConversion {
    RecToOde = 0,
    OdeToRec = 1,
    AlgToOde = 2,
    Homogenize = 3,
}

/// A term list.
pub struct HoloSequence(Vec<Rational>);

/// A recurrence, differential equation or algebraic equation with its initial data.
pub struct HoloRelation(Relation);

/// An element of a shift or differential Ore algebra.
pub struct HoloOperator(OreOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &HoloError) -> HoloStatus {
    match e.exit_code() {
        2 => HoloStatus::NoRelation,
        3 => HoloStatus::ParseError,
        5 => HoloStatus::Internal,
        _ => HoloStatus::InvalidInput,
    }
}

struct Fail(HoloStatus, String);

impl From<HoloError> for Fail {
    fn from(e: HoloError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(HoloStatus::InvalidInput, msg.to_string())
}

fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Fail>) -> HoloStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return HoloStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            HoloStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("panic inside holonomic".into());
            HoloStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(HoloStatus::NullPointer, "string argument is null".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| Fail(HoloStatus::NullPointer, "handle is null".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no interior nul").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the most recent failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn holo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn holo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn holo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a plain or b-file term list.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_sequence_parse(input: *const c_char, out: *mut *mut HoloSequence) -> HoloStatus {
    guard(out, || {
        let seq = parse_sequence(text(input)?)?;
        Ok(boxed(HoloSequence(seq.values())))
    })
}

/// # Safety
/// `seq` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn holo_sequence_len(seq: *const HoloSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// Writes term `i` as `p` or `p/q`.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_sequence_term(seq: *const HoloSequence, i: usize, out: *mut *mut c_char) -> HoloStatus {
    guard(out, || {
        let s = handle(seq)?;
        let v = s.0.get(i).ok_or_else(|| invalid("index out of range"))?;
        Ok(owned(v.to_string()))
    })
}

/// # Safety
/// `seq` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn holo_sequence_free(seq: *mut HoloSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Guesses a relation with default settings, `max_order` overriding the order bound when nonzero.
/// Returns `NoRelation` when the sweep finds nothing.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_guess(
    seq: *const HoloSequence,
    kind: HoloGuessKind,
    max_order: usize,
    out: *mut *mut HoloRelation,
) -> HoloStatus {
    guard(out, || {
        let s = handle(seq)?;
        let mut cfg = GuessConfig::default();
        if max_order > 0 {
            cfg.max_order = max_order;
        }
        let rep = match kind {
            HoloGuessKind::Rec => guess_rec(&s.0, &cfg)?,
            HoloGuessKind::Ode => guess_diffeq(&s.0, &cfg)?,
            HoloGuessKind::Alg => guess_algeq(&s.0, &cfg)?,
        };
        match rep.relation {
            Some(r) => Ok(boxed(HoloRelation(r))),
            None => Err(Fail(HoloStatus::NoRelation, "no relation found".into())),
        }
    })
}

/// Parses a relation in JSON or pretty form.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_relation_parse(input: *const c_char, out: *mut *mut HoloRelation) -> HoloStatus {
    guard(out, || Ok(boxed(HoloRelation(parse_relation(text(input)?)?))))
}

/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_relation_format(rel: *const HoloRelation, json: bool, out: *mut *mut c_char) -> HoloStatus {
    guard(out, || {
        let mode = if json { OutputMode::Json } else { OutputMode::Pretty };
        Ok(owned(format_relation(&handle(rel)?.0, mode)))
    })
}

/// # Safety
/// `rel` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn holo_relation_free(rel: *mut HoloRelation) {
    if !rel.is_null() {
        drop(Box::from_raw(rel));
    }
}

/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_convert(
    rel: *const HoloRelation,
    how: HoloConversion,
    out: *mut *mut HoloRelation,
) -> HoloStatus {
    guard(out, || {
        let r = &handle(rel)?.0;
        let res: Relation = match (how, r) {
            (HoloConversion::RecToOde, Relation::Rec(x)) => rec_to_diffeq(x)?.into(),
            (HoloConversion::OdeToRec, Relation::Ode(x)) => diffeq_to_rec(x)?.into(),
            (HoloConversion::AlgToOde, Relation::Alg(x)) => algeq_to_diffeq(x)?.into(),
            (HoloConversion::Homogenize, Relation::Rec(x)) => homogenize_rec(x)?.into(),
            (HoloConversion::Homogenize, Relation::Ode(x)) => homogenize_diffeq(x)?.into(),
            _ => return Err(invalid("conversion does not apply to this relation")),
        };
        Ok(boxed(HoloRelation(res)))
    })
}

unsafe fn closure(
    a: *const HoloRelation,
    b: *const HoloRelation,
    out: *mut *mut HoloRelation,
    mul: bool,
) -> HoloStatus {
    guard(out, || {
        let res: Relation = match (&handle(a)?.0, &handle(b)?.0, mul) {
            (Relation::Rec(x), Relation::Rec(y), false) => rec_add(x, y)?.into(),
            (Relation::Rec(x), Relation::Rec(y), true) => rec_mul(x, y)?.into(),
            (Relation::Ode(x), Relation::Ode(y), false) => diffeq_add(x, y)?.into(),
            (Relation::Ode(x), Relation::Ode(y), true) => diffeq_mul(x, y)?.into(),
            _ => return Err(HoloError::KindMismatch.into()),
        };
        Ok(boxed(HoloRelation(res)))
    })
}

/// Relation for the termwise sum (recurrences) or sum of series (ODEs).
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_closure_add(
    a: *const HoloRelation,
    b: *const HoloRelation,
    out: *mut *mut HoloRelation,
) -> HoloStatus {
    closure(a, b, out, false)
}

/// Relation for the termwise product (recurrences) or Cauchy product (ODEs).
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_closure_mul(
    a: *const HoloRelation,
    b: *const HoloRelation,
    out: *mut *mut HoloRelation,
) -> HoloStatus {
    closure(a, b, out, true)
}

/// First `n` terms of a recurrence or series coefficients of an ODE or algebraic equation.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_expand(rel: *const HoloRelation, n: usize, out: *mut *mut HoloSequence) -> HoloStatus {
    guard(out, || {
        let v = match &handle(rel)?.0 {
            Relation::Rec(r) => unroll(r, n)?,
            Relation::Ode(d) => series_from_diffeq(d, n)?,
            Relation::Alg(a) => series_from_algeq(a, n)?,
        };
        Ok(boxed(HoloSequence(v)))
    })
}

/// Term `n` of a recurrence by binary splitting, as a decimal string.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_nth_term(rel: *const HoloRelation, n: usize, out: *mut *mut c_char) -> HoloStatus {
    guard(out, || match &handle(rel)?.0 {
        Relation::Rec(r) => Ok(owned(nth_term(r, n)?.to_string())),
        _ => Err(invalid("nth term needs a recurrence")),
    })
}

/// Operator of a recurrence or differential equation.
///
/// # Safety
/// `rel` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_relation_operator(rel: *const HoloRelation, out: *mut *mut HoloOperator) -> HoloStatus {
    guard(out, || match &handle(rel)?.0 {
        Relation::Rec(r) => Ok(boxed(HoloOperator(r.operator()))),
        Relation::Ode(d) => Ok(boxed(HoloOperator(d.operator()))),
        Relation::Alg(_) => Err(invalid("an algebraic equation is not an operator")),
    })
}

/// Parses `kind=shift var=n; [[...]; [...]]`.
///
/// # Safety
/// `input` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_parse(input: *const c_char, out: *mut *mut HoloOperator) -> HoloStatus {
    guard(out, || Ok(boxed(HoloOperator(parse_operator_text(text(input)?)?))))
}

/// Canonical form in the text syntax accepted by [`holo_operator_parse`].
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_format(op: *const HoloOperator, out: *mut *mut c_char) -> HoloStatus {
    guard(out, || Ok(owned(handle(op)?.0.canonical().to_text())))
}

/// # Safety
/// `op` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_order(op: *const HoloOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.order())
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_gcrd(
    a: *const HoloOperator,
    b: *const HoloOperator,
    out: *mut *mut HoloOperator,
) -> HoloStatus {
    guard(out, || Ok(boxed(HoloOperator(gcrd(&handle(a)?.0, &handle(b)?.0)?))))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_lclm(
    a: *const HoloOperator,
    b: *const HoloOperator,
    out: *mut *mut HoloOperator,
) -> HoloStatus {
    guard(out, || Ok(boxed(HoloOperator(lclm(&handle(a)?.0, &handle(b)?.0)?))))
}

/// # Safety
/// `op` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn holo_operator_free(op: *mut HoloOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}
