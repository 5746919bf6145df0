//! C ABI over `nnfopt`.
//!
//! Circuits, objectives and results are opaque heap handles, created by the
//! `*_parse`/`*_load`/`nnfopt_optimize` calls and released by the matching
//! `*_free`. Every fallible call returns an [`NnfoptStatus`]; on failure the
//! message is available from [`nnfopt_last_error`] on the same thread.
//! Strings returned as `char *` are owned by the caller and released with
//! [`nnfopt_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use nnfopt::circuit::{parse_nnf, serialize_nnf};
use nnfopt::compile::{compile_cnf_to_dnnf, parse_dimacs};
use nnfopt::objective::{load_objective, parse_objective, Objective};
use nnfopt::optimize::{condition_and_fix, dispatch, Algorithm, DispatchOptions, FptOptions};
use nnfopt::{Error, Literal, NnfCircuit, OptResult, PartialInterpretation};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NnfoptStatus {
    Ok = 0,
    /// The constraint has no model.
    NoSolution = 1,
    /// Null pointer, bad UTF-8, out-of-range literal or similar.
    InvalidArgument = 2,
    /// Malformed NNF, DIMACS or weighted-base text.
    Format = 3,
    /// No tractable algorithm applies and enumeration is over its cap.
    Intractable = 4,
    Io = 5,
    /// The requested algorithm does not accept this circuit, base or aggregator.
    Precondition = 6,
    /// A bug inside the library; the message says where.
    Internal = 7,
}

/// Algorithm selector and report. `Auto` is only accepted as input.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NnfoptAlgorithm {
    Auto = 0,
    DnnfLinear = 1,
    DnfMonotone = 2,
    FptPoly = 3,
    Brute = 4,
}

/// Opaque NNF circuit.
pub struct NnfoptCircuit {
    inner: NnfCircuit,
}

/// Opaque weighted base with its aggregator.
pub struct NnfoptObjective {
    inner: Objective,
}

/// Opaque optimization outcome.
pub struct NnfoptResult {
    result: OptResult,
    algorithm: Algorithm,
}

type Failure = (NnfoptStatus, String);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NnfoptStatus {
    match e {
        Error::Format { .. } => NnfoptStatus::Format,
        Error::Io(_) => NnfoptStatus::Io,
        Error::Inconsistent => NnfoptStatus::NoSolution,
        Error::IntractableCombination(_) | Error::NExceedsCap { .. } | Error::TooManyVars { .. } => {
            NnfoptStatus::Intractable
        }
        Error::InvalidArgument(_)
        | Error::VarOutOfRange { .. }
        | Error::InconsistentTerm(_)
        | Error::BadSetSize(_)
        | Error::ClausePolarityViolation(_) => NnfoptStatus::InvalidArgument,
        _ => NnfoptStatus::Precondition,
    }
}

fn fail(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn invalid(msg: impl Into<String>) -> Failure {
    (NnfoptStatus::InvalidArgument, msg.into())
}

/// Runs `f`, records any failure and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<NnfoptStatus, Failure>) -> NnfoptStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            NnfoptStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<NnfoptStatus, Failure> {
    *out = Box::into_raw(Box::new(value));
    Ok(NnfoptStatus::Ok)
}

unsafe fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    *out = ptr::null_mut();
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| invalid(format!("{what} handle is null")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nnfopt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn nnfopt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses c2d NNF text.
///
/// # Safety
/// `nnf` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_parse(nnf: *const c_char, out: *mut *mut NnfoptCircuit) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let c = parse_nnf(text(nnf, "nnf")?).map_err(fail)?;
        put(out, NnfoptCircuit { inner: c })
    })
}

/// Reads a c2d NNF file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_load(path: *const c_char, out: *mut *mut NnfoptCircuit) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let s = fs::read_to_string(text(path, "path")?).map_err(|e| fail(e.into()))?;
        let c = parse_nnf(&s).map_err(fail)?;
        put(out, NnfoptCircuit { inner: c })
    })
}

/// Compiles DIMACS CNF text into a decomposable circuit.
///
/// # Safety
/// `cnf` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_compile_dimacs(
    cnf: *const c_char,
    out: *mut *mut NnfoptCircuit,
) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let cnf = parse_dimacs(text(cnf, "cnf")?).map_err(fail)?;
        put(out, NnfoptCircuit { inner: compile_cnf_to_dnnf(&cnf) })
    })
}

/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_free(c: *mut NnfoptCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_num_vars(c: *const NnfoptCircuit) -> u32 {
    c.as_ref().map_or(0, |c| c.inner.num_vars())
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_num_nodes(c: *const NnfoptCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.inner.num_nodes())
}

/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_is_decomposable(c: *const NnfoptCircuit) -> bool {
    c.as_ref().is_some_and(|c| c.inner.is_decomposable())
}

/// Linear-time consistency test; needs a decomposable circuit.
///
/// # Safety
/// `c` must be a live circuit handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_consistent(c: *const NnfoptCircuit, out: *mut bool) -> NnfoptStatus {
    guard(|| {
        let c = handle(c, "circuit")?;
        let out = out.as_mut().ok_or_else(|| invalid("output pointer is null"))?;
        *out = c.inner.consistent().map_err(fail)?;
        Ok(NnfoptStatus::Ok)
    })
}

/// Conditions on `n` DIMACS literals and conjoins them back, so the result
/// has exactly the models of the circuit that extend the term.
///
/// # Safety
/// `c` must be a live circuit handle, `lits` must point to `n` integers
/// (or be null when `n` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_condition(
    c: *const NnfoptCircuit,
    lits: *const i64,
    n: usize,
    out: *mut *mut NnfoptCircuit,
) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let c = handle(c, "circuit")?;
        let codes: &[i64] = if n == 0 {
            &[]
        } else if lits.is_null() {
            return Err(invalid("literal array is null"));
        } else {
            std::slice::from_raw_parts(lits, n)
        };
        let mut term = Vec::with_capacity(n);
        for &code in codes {
            let l = Literal::from_dimacs(code).ok_or_else(|| invalid(format!("bad literal {code}")))?;
            if l.var().index() > c.inner.num_vars() {
                return Err(fail(Error::VarOutOfRange { var: l.var().index(), num_vars: c.inner.num_vars() }));
            }
            term.push(l);
        }
        let gamma = PartialInterpretation::from_literals(term).map_err(fail)?;
        put(out, NnfoptCircuit { inner: condition_and_fix(&c.inner, &gamma) })
    })
}

/// c2d NNF text of the circuit, or null for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_circuit_serialize(c: *const NnfoptCircuit) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| owned_string(serialize_nnf(&c.inner)))
}

/// Parses weighted-base text. `f` items are read relative to `base_dir`;
/// with a null `base_dir` they are rejected.
///
/// # Safety
/// `wb` must be a NUL-terminated string, `base_dir` null or NUL-terminated,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_objective_parse(
    wb: *const c_char,
    base_dir: *const c_char,
    out: *mut *mut NnfoptObjective,
) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let wb = text(wb, "wb")?;
        let dir = if base_dir.is_null() { None } else { Some(Path::new(text(base_dir, "base_dir")?)) };
        let obj = parse_objective(wb, |rel| match dir {
            Some(d) => parse_nnf(&fs::read_to_string(d.join(rel))?),
            None => Err(Error::InvalidArgument(format!("circuit item {rel} needs a base directory"))),
        })
        .map_err(fail)?;
        put(out, NnfoptObjective { inner: obj })
    })
}

/// Reads a weighted-base file and the circuit files it refers to.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_objective_load(path: *const c_char, out: *mut *mut NnfoptObjective) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let obj = load_objective(Path::new(text(path, "path")?)).map_err(fail)?;
        put(out, NnfoptObjective { inner: obj })
    })
}

/// Number of weighted items, or 0 for a null handle.
///
/// # Safety
/// `o` must be null or a live objective handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_objective_num_items(o: *const NnfoptObjective) -> usize {
    o.as_ref().map_or(0, |o| o.inner.base.len())
}

/// # Safety
/// `o` must be null or a live objective handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_objective_free(o: *mut NnfoptObjective) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Minimizes the objective over the circuit's models. `n_cap` and `jobs`
/// of 0 select the defaults. Returns `Ok` whenever the search ran; an
/// inconsistent circuit yields a result whose status is `NoSolution`.
///
/// # Safety
/// `c` and `o` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_optimize(
    c: *const NnfoptCircuit,
    o: *const NnfoptObjective,
    algorithm: NnfoptAlgorithm,
    n_cap: usize,
    jobs: usize,
    out: *mut *mut NnfoptResult,
) -> NnfoptStatus {
    guard(|| {
        check_out(out)?;
        let c = handle(c, "circuit")?;
        let o = handle(o, "objective")?;
        let defaults = FptOptions::default();
        let opts = DispatchOptions {
            algorithm: match algorithm {
                NnfoptAlgorithm::Auto => None,
                NnfoptAlgorithm::DnnfLinear => Some(Algorithm::DnnfLinear),
                NnfoptAlgorithm::DnfMonotone => Some(Algorithm::DnfMonotone),
                NnfoptAlgorithm::FptPoly => Some(Algorithm::FptPolynomial),
                NnfoptAlgorithm::Brute => Some(Algorithm::Brute),
            },
            fpt: FptOptions {
                n_cap: if n_cap == 0 { defaults.n_cap } else { n_cap },
                jobs: if jobs == 0 { defaults.jobs } else { jobs },
            },
        };
        let (result, algorithm) = dispatch(&c.inner, &o.inner.base, &o.inner.aggregator, &opts).map_err(fail)?;
        put(out, NnfoptResult { result, algorithm })
    })
}

/// `Ok` if an optimal model was found, `NoSolution` otherwise.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_status(r: *const NnfoptResult) -> NnfoptStatus {
    match r.as_ref() {
        Some(r) if r.result.model().is_some() => NnfoptStatus::Ok,
        Some(_) => NnfoptStatus::NoSolution,
        None => NnfoptStatus::InvalidArgument,
    }
}

/// The algorithm that produced the result.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_algorithm(r: *const NnfoptResult) -> NnfoptAlgorithm {
    match r.as_ref().map(|r| r.algorithm) {
        Some(Algorithm::DnnfLinear) => NnfoptAlgorithm::DnnfLinear,
        Some(Algorithm::DnfMonotone) => NnfoptAlgorithm::DnfMonotone,
        Some(Algorithm::FptPolynomial) => NnfoptAlgorithm::FptPoly,
        Some(Algorithm::Brute) => NnfoptAlgorithm::Brute,
        Some(Algorithm::ObddLinearize) | None => NnfoptAlgorithm::Auto,
    }
}

/// Length of the model, 0 when there is none.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_num_vars(r: *const NnfoptResult) -> u32 {
    r.as_ref().and_then(|r| r.result.model()).map_or(0, |m| m.num_vars())
}

/// Writes the model as 0/1 bytes, variable 1 first. `len` must be at least
/// [`nnfopt_result_num_vars`].
///
/// # Safety
/// `r` must be a live result handle and `buf` must have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_model(r: *const NnfoptResult, buf: *mut u8, len: usize) -> NnfoptStatus {
    guard(|| {
        let r = handle(r, "result")?;
        let m = r.result.model().ok_or((NnfoptStatus::NoSolution, "no model".to_string()))?;
        let vals = m.values();
        if buf.is_null() || len < vals.len() {
            return Err(invalid(format!("buffer needs {} bytes", vals.len())));
        }
        let dst = std::slice::from_raw_parts_mut(buf, vals.len());
        for (d, &v) in dst.iter_mut().zip(vals) {
            *d = u8::from(v);
        }
        Ok(NnfoptStatus::Ok)
    })
}

/// Optimal score as text (`4`, `-3/2`, `(1, 0)`), or null without a model.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_score(r: *const NnfoptResult) -> *mut c_char {
    r.as_ref().and_then(|r| r.result.score()).map_or(ptr::null_mut(), |s| owned_string(s.to_string()))
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn nnfopt_result_free(r: *mut NnfoptResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
