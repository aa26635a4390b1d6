//! C interface to `realpi0`.
//!
//! Every function returns an [`Rp0Status`]; results come back through out
//! pointers. Handles are opaque and must be released with the matching
//! `*_free` function. After a failure, [`rp0_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use num_traits::ToPrimitive;
use realpi0::cli::{parse_jobspec, render_json, run_with_bound, PresetSource, DEFAULT_ORACLE_BOUND};
use realpi0::components::{h1_pi1, kernel_embedding_check, oracle_check, pi0, Elementary2Group, OracleVerdict};
use realpi0::realform::{E7Form, Involution};
use realpi0::rootdata::{PresetSpec, RootDatum};
use realpi0::Error;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rp0Status {
    Ok = 0,
    NullPointer = 1,
    /// The input was rejected (bad parameters, invalid θ, malformed job).
    InvalidInput = 2,
    /// An index is out of range or a buffer is too short.
    OutOfRange = 3,
    /// A consistency check failed inside the library.
    Internal = 4,
    /// Coset enumeration disagreed with the Smith form computation.
    OracleDisagreement = 5,
    Panic = 6,
}

/// A reductive group with a real form: root datum plus involution.
pub struct Rp0Group {
    datum: RootDatum,
    involution: Involution,
}

/// π₀ and H¹ of an [`Rp0Group`].
pub struct Rp0Result {
    pi0: Elementary2Group,
    h1: Elementary2Group,
    embedding_ok: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> Rp0Status {
    match e {
        Error::Internal(_) => Rp0Status::Internal,
        Error::OracleDisagreement(_) => Rp0Status::OracleDisagreement,
        _ => Rp0Status::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), (Rp0Status, String)>>(f: F) -> Rp0Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Rp0Status::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside realpi0".into());
            Rp0Status::Panic
        }
    }
}

fn lib_err(e: Error) -> (Rp0Status, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (Rp0Status, String) {
    (Rp0Status::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (Rp0Status, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (Rp0Status::InvalidInput, format!("{what} is not valid UTF-8")))
}

/// Writes `make()` to `out`; `make` is not called when `out` is null, so
/// nothing is allocated and leaked.
unsafe fn write_out<T>(out: *mut T, make: impl FnOnce() -> T, what: &str) -> Result<(), (Rp0Status, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(make());
    Ok(())
}

fn new_group(source: PresetSource) -> Result<Box<Rp0Group>, (Rp0Status, String)> {
    let (datum, involution) = source.build().map_err(lib_err)?;
    Ok(Box::new(Rp0Group { datum, involution }))
}

unsafe fn emit_group(out: *mut *mut Rp0Group, g: Box<Rp0Group>) -> Result<(), (Rp0Status, String)> {
    write_out(out, || Box::into_raw(g), "out")
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rp0_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Split `GL(n)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn rp0_group_gl(n: size_t, out: *mut *mut Rp0Group) -> Rp0Status {
    guard(|| emit_group(out, new_group(PresetSource::Standard(PresetSpec::Gl { n }))?))
}

/// `SO(p, q)`.
///
/// # Safety
/// As [`rp0_group_gl`].
#[no_mangle]
pub unsafe extern "C" fn rp0_group_so(p: size_t, q: size_t, out: *mut *mut Rp0Group) -> Rp0Status {
    guard(|| emit_group(out, new_group(PresetSource::Standard(PresetSpec::So { p, q }))?))
}

/// `PSO(p, q)`, `p + q` even.
///
/// # Safety
/// As [`rp0_group_gl`].
#[no_mangle]
pub unsafe extern "C" fn rp0_group_pso(p: size_t, q: size_t, out: *mut *mut Rp0Group) -> Rp0Status {
    guard(|| emit_group(out, new_group(PresetSource::Standard(PresetSpec::Pso { p, q }))?))
}

/// Adjoint `E₇` in the real form named by `form` ("EV", "EVI" or "EVII").
///
/// # Safety
/// `form` must be a nul-terminated string; `out` as in [`rp0_group_gl`].
#[no_mangle]
pub unsafe extern "C" fn rp0_group_e7(form: *const c_char, out: *mut *mut Rp0Group) -> Rp0Status {
    guard(|| {
        let form: E7Form = read_str(form, "form")?.parse().map_err(lib_err)?;
        emit_group(out, new_group(PresetSource::E7(form))?)
    })
}

/// Builds a group from a JSON job document (preset or inline data).
///
/// # Safety
/// `job_json` must be a nul-terminated string; `out` as in [`rp0_group_gl`].
#[no_mangle]
pub unsafe extern "C" fn rp0_group_from_json(job_json: *const c_char, out: *mut *mut Rp0Group) -> Rp0Status {
    guard(|| {
        let job = parse_jobspec(read_str(job_json, "job_json")?).map_err(lib_err)?;
        let (datum, involution) = job.build().map_err(lib_err)?;
        emit_group(out, Box::new(Rp0Group { datum, involution }))
    })
}

/// Rank of the cocharacter lattice.
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_group_rank(group: *const Rp0Group, out: *mut size_t) -> Rp0Status {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        write_out(out, || g.datum.rank(), "out")
    })
}

/// # Safety
/// `group` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp0_group_free(group: *mut Rp0Group) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Computes π₀ and H¹.
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_compute(group: *const Rp0Group, out: *mut *mut Rp0Result) -> Rp0Status {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let p = pi0(&g.datum, &g.involution).map_err(lib_err)?;
        let h = h1_pi1(&g.datum, &g.involution).map_err(lib_err)?;
        let embedding_ok = kernel_embedding_check(&g.datum, &g.involution).map_err(lib_err)?;
        write_out(out, || Box::into_raw(Box::new(Rp0Result { pi0: p, h1: h, embedding_ok })), "out")
    })
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp0_result_free(result: *mut Rp0Result) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

fn order_of(g: &Elementary2Group) -> Result<u64, (Rp0Status, String)> {
    g.order().to_u64().ok_or((Rp0Status::OutOfRange, "order does not fit in 64 bits".into()))
}

/// Order of π₀G(ℝ).
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_pi0_order(result: *const Rp0Result, out: *mut u64) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let n = order_of(&r.pi0)?;
        write_out(out, || n, "out")
    })
}

/// Number of π₀ generators (the 2-rank).
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_pi0_rank(result: *const Rp0Result, out: *mut size_t) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        write_out(out, || r.pi0.rank(), "out")
    })
}

/// Copies generator `index` of π₀ into `buf`, which must hold `len` ≥ the
/// lattice rank entries.
///
/// # Safety
/// `result` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn rp0_pi0_generator(result: *const Rp0Result, index: size_t, buf: *mut i64, len: size_t) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let g = r
            .pi0
            .generators()
            .get(index)
            .ok_or_else(|| (Rp0Status::OutOfRange, format!("generator {index} of {}", r.pi0.rank())))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < g.len() {
            return Err((Rp0Status::OutOfRange, format!("buffer holds {len}, need {}", g.len())));
        }
        for (i, x) in g.iter().enumerate() {
            let v = x.to_i64().ok_or((Rp0Status::OutOfRange, "entry does not fit in 64 bits".into()))?;
            buf.add(i).write(v);
        }
        Ok(())
    })
}

/// Name of generator `index` (e.g. "e∨1"), or its coordinates when unnamed.
/// Free the string with [`rp0_string_free`].
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_pi0_generator_label(result: *const Rp0Result, index: size_t, out: *mut *mut c_char) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        if index >= r.pi0.rank() {
            return Err((Rp0Status::OutOfRange, format!("generator {index} of {}", r.pi0.rank())));
        }
        let s = CString::new(r.pi0.generator_label(index)).map_err(|e| (Rp0Status::Internal, e.to_string()))?;
        write_out(out, || s.into_raw(), "out")
    })
}

/// Order of H¹(ℝ, iX∨/iQ∨).
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_h1_order(result: *const Rp0Result, out: *mut u64) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let n = order_of(&r.h1)?;
        write_out(out, || n, "out")
    })
}

/// Whether π₀ maps injectively into H¹.
///
/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_embedding_ok(result: *const Rp0Result, out: *mut bool) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        write_out(out, || r.embedding_ok, "out")
    })
}

/// Recomputes π₀ and H¹ by coset enumeration up to `bound` cosets. `*agree`
/// is true when both were checked and matched, false when skipped; a
/// mismatch returns [`Rp0Status::OracleDisagreement`].
///
/// # Safety
/// `result` must be a live handle and `agree` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_oracle_check(result: *const Rp0Result, bound: size_t, agree: *mut bool) -> Rp0Status {
    guard(|| {
        let r = result.as_ref().ok_or_else(|| null("result"))?;
        let a = oracle_check(&r.pi0, bound).map_err(lib_err)?;
        let b = oracle_check(&r.h1, bound).map_err(lib_err)?;
        write_out(agree, || a == OracleVerdict::Agree && b == OracleVerdict::Agree, "agree")
    })
}

/// Runs a JSON job and returns the JSON report. `oracle_bound` of 0 means
/// the default. Free the string with [`rp0_string_free`].
///
/// # Safety
/// `job_json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp0_report_json(job_json: *const c_char, oracle_bound: size_t, out: *mut *mut c_char) -> Rp0Status {
    guard(|| {
        let job = parse_jobspec(read_str(job_json, "job_json")?).map_err(lib_err)?;
        let bound = if oracle_bound == 0 { DEFAULT_ORACLE_BOUND } else { oracle_bound };
        let report = run_with_bound(&job, bound).map_err(lib_err)?;
        let s = CString::new(render_json(&report)).map_err(|e| (Rp0Status::Internal, e.to_string()))?;
        write_out(out, || s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp0_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
