//! C interface to the `nspso` library.
//!
//! Every fallible function returns an [`NspsoStatus`]; on failure the message
//! is available from [`nspso_last_error`] on the same thread. Objects are
//! opaque handles released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use nspso::bench::{Problem, ProblemId};
use nspso::engine::{RunConfig, StopReason};
use nspso::harness::{self, CellOutcome};
use nspso::{novelty, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NspsoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    WrongArity = 3,
    Domain = 4,
    InfeasibleRegion = 5,
    Config = 6,
    Io = 7,
    Parse = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NspsoStopReason {
    BudgetExhausted = 0,
    AllLowNovel = 1,
    MaxOuterIterations = 2,
}

/// Run parameters; fill with [`nspso_run_config_default`] then adjust.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NspsoRunConfig {
    pub leader_count: usize,
    pub swarm_size: usize,
    pub radius_initial: f64,
    pub radius_increment: f64,
    pub novelty_threshold: f64,
    pub threshold_decay: f64,
    pub fitness_threshold: f64,
    pub max_iterations_outer: u64,
    pub inner_max_iterations: usize,
    pub max_fes: u64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NspsoRankSum {
    pub h: u8,
    pub rank_sum: f64,
    pub z: f64,
    pub p_value: f64,
}

/// Opaque benchmark problem.
pub struct NspsoProblem {
    inner: Problem,
}

/// Opaque result of one run.
pub struct NspsoRunResult {
    inner: CellOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NspsoStatus {
    match err {
        Error::Argument(_) => NspsoStatus::InvalidArgument,
        Error::WrongArity { .. } => NspsoStatus::WrongArity,
        Error::Domain { .. } => NspsoStatus::Domain,
        Error::InfeasibleRegion { .. } => NspsoStatus::InfeasibleRegion,
        Error::Config(_) => NspsoStatus::Config,
        Error::Io { .. } => NspsoStatus::Io,
        Error::Parse { .. } => NspsoStatus::Parse,
    }
}

struct Fail(NspsoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(NspsoStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NspsoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NspsoStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NspsoStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn input<'a>(data: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(unsafe { slice::from_raw_parts(data, len) })
}

impl From<NspsoRunConfig> for RunConfig {
    fn from(c: NspsoRunConfig) -> Self {
        RunConfig {
            leader_count: c.leader_count,
            swarm_size: c.swarm_size,
            radius_initial: c.radius_initial,
            radius_increment: c.radius_increment,
            novelty_threshold: c.novelty_threshold,
            threshold_decay: c.threshold_decay,
            fitness_threshold: c.fitness_threshold,
            max_iterations_outer: c.max_iterations_outer,
            inner_max_iterations: c.inner_max_iterations,
            max_fes: c.max_fes,
            seed: c.seed,
        }
    }
}

impl From<RunConfig> for NspsoRunConfig {
    fn from(c: RunConfig) -> Self {
        NspsoRunConfig {
            leader_count: c.leader_count,
            swarm_size: c.swarm_size,
            radius_initial: c.radius_initial,
            radius_increment: c.radius_increment,
            novelty_threshold: c.novelty_threshold,
            threshold_decay: c.threshold_decay,
            fitness_threshold: c.fitness_threshold,
            max_iterations_outer: c.max_iterations_outer,
            inner_max_iterations: c.inner_max_iterations,
            max_fes: c.max_fes,
            seed: c.seed,
        }
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nspso_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates benchmark `number` (1 to 17) in `dim` dimensions. Rotated
/// problems draw their matrix from `rotation_seed`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_new(
    number: u32,
    dim: usize,
    rotation_seed: u64,
    out: *mut *mut NspsoProblem,
) -> NspsoStatus {
    guard(|| {
        let id = ProblemId::from_number(number)
            .ok_or_else(|| Fail(NspsoStatus::InvalidArgument, format!("no benchmark numbered {number}")))?;
        let problem = Problem::with_rotation_seed(id, dim, rotation_seed)?;
        let handle = Box::into_raw(Box::new(NspsoProblem { inner: problem }));
        unsafe { write(out, handle, "out") }.inspect_err(|_| drop(unsafe { Box::from_raw(handle) }))
    })
}

/// # Safety
/// `problem` must be null or a handle from [`nspso_problem_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_free(problem: *mut NspsoProblem) {
    if !problem.is_null() {
        drop(unsafe { Box::from_raw(problem) });
    }
}

/// Dimension of the problem, or 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_dimension(problem: *const NspsoProblem) -> usize {
    unsafe { problem.as_ref() }.map_or(0, |p| p.inner.dimension())
}

/// Whether the problem is bi-objective (use [`nspso_problem_evaluate_mmf`]).
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_is_multi_objective(problem: *const NspsoProblem) -> bool {
    unsafe { problem.as_ref() }.is_some_and(|p| p.inner.id().is_multi_objective())
}

/// Copies the search bounds into `lower` and `upper`, each of length `len`.
///
/// # Safety
/// `lower` and `upper` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_bounds(
    problem: *const NspsoProblem,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> NspsoStatus {
    guard(|| {
        let p = unsafe { deref(problem, "problem") }?;
        let b = p.inner.search_bounds();
        if len != b.dimension() {
            return Err(Fail(NspsoStatus::InvalidArgument, format!("expected length {}, got {len}", b.dimension())));
        }
        if lower.is_null() || upper.is_null() {
            return Err(null("bounds buffer"));
        }
        unsafe {
            ptr::copy_nonoverlapping(b.lower().as_ptr(), lower, len);
            ptr::copy_nonoverlapping(b.upper().as_ptr(), upper, len);
        }
        Ok(())
    })
}

/// Scalar fitness of `x` (f1 to f14).
///
/// # Safety
/// `x` must point to `len` doubles and `out` to one writable double.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_evaluate(
    problem: *const NspsoProblem,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> NspsoStatus {
    guard(|| {
        let p = unsafe { deref(problem, "problem") }?;
        let x = unsafe { input(x, len, "x") }?;
        let f = p.inner.evaluate(x)?;
        unsafe { write(out, f, "out") }
    })
}

/// Both objectives of `x` (f15 to f17).
///
/// # Safety
/// `x` must point to `len` doubles; `f1` and `f2` to one writable double each.
#[no_mangle]
pub unsafe extern "C" fn nspso_problem_evaluate_mmf(
    problem: *const NspsoProblem,
    x: *const f64,
    len: usize,
    f1: *mut f64,
    f2: *mut f64,
) -> NspsoStatus {
    guard(|| {
        let p = unsafe { deref(problem, "problem") }?;
        let x = unsafe { input(x, len, "x") }?;
        let pair = p.inner.evaluate_mmf(x)?;
        unsafe {
            write(f1, pair.f1, "f1")?;
            write(f2, pair.f2, "f2")
        }
    })
}

/// Novelty score of two centres `d` apart with radius `r`.
///
/// # Safety
/// `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn nspso_novelty_score(d: f64, r: f64, out: *mut f64) -> NspsoStatus {
    guard(|| {
        let ns = novelty::novelty_score(d, r)?;
        unsafe { write(out, ns, "out") }
    })
}

/// Default parameters for a problem of dimension `dim`.
///
/// # Safety
/// `out` must point to one writable [`NspsoRunConfig`].
#[no_mangle]
pub unsafe extern "C" fn nspso_run_config_default(dim: usize, out: *mut NspsoRunConfig) -> NspsoStatus {
    guard(|| {
        if dim == 0 {
            return Err(Fail(NspsoStatus::InvalidArgument, "dimension must be at least 1".into()));
        }
        unsafe { write(out, RunConfig::for_dimension(dim).into(), "out") }
    })
}

/// Runs the controller (or the plain bare-bones baseline when `baseline` is
/// set) on `problem`. Bi-objective problems are minimized on their first
/// objective and also report IGD.
///
/// # Safety
/// `config` must point to a readable config and `out` to writable storage
/// for one handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_run(
    problem: *const NspsoProblem,
    config: *const NspsoRunConfig,
    baseline: bool,
    out: *mut *mut NspsoRunResult,
) -> NspsoStatus {
    guard(|| {
        let p = unsafe { deref(problem, "problem") }?;
        let cfg: RunConfig = (*unsafe { deref(config, "config") }?).into();
        if out.is_null() {
            return Err(null("out"));
        }
        let outcome = harness::solve(&p.inner, &cfg, baseline)?;
        let handle = Box::into_raw(Box::new(NspsoRunResult { inner: outcome }));
        unsafe { write(out, handle, "out") }
    })
}

/// # Safety
/// `result` must be null or a handle from [`nspso_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_free(result: *mut NspsoRunResult) {
    if !result.is_null() {
        drop(unsafe { Box::from_raw(result) });
    }
}

/// Best fitness found, NaN for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_best_fitness(result: *const NspsoRunResult) -> f64 {
    unsafe { result.as_ref() }.map_or(f64::NAN, |r| r.inner.result.best_fitness)
}

/// IGD for bi-objective problems, NaN otherwise.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_igd(result: *const NspsoRunResult) -> f64 {
    unsafe { result.as_ref() }.and_then(|r| r.inner.igd).unwrap_or(f64::NAN)
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_evaluations(result: *const NspsoRunResult) -> u64 {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.result.evaluations_used)
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_outer_iterations(result: *const NspsoRunResult) -> u64 {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.result.outer_iterations)
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_archive_size(result: *const NspsoRunResult) -> usize {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.result.archive_size)
}

/// # Safety
/// `result` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_stop_reason(
    result: *const NspsoRunResult,
    out: *mut NspsoStopReason,
) -> NspsoStatus {
    guard(|| {
        let r = unsafe { deref(result, "result") }?;
        let reason = match r.inner.result.stop_reason {
            StopReason::BudgetExhausted => NspsoStopReason::BudgetExhausted,
            StopReason::AllLowNovel => NspsoStopReason::AllLowNovel,
            StopReason::MaxOuterIterations => NspsoStopReason::MaxOuterIterations,
        };
        unsafe { write(out, reason, "out") }
    })
}

/// Copies the best position into `buf`, which must hold exactly the problem
/// dimension.
///
/// # Safety
/// `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_best_position(
    result: *const NspsoRunResult,
    buf: *mut f64,
    len: usize,
) -> NspsoStatus {
    guard(|| {
        let r = unsafe { deref(result, "result") }?;
        let pos = &r.inner.result.best_position;
        if len != pos.len() {
            return Err(Fail(NspsoStatus::InvalidArgument, format!("expected length {}, got {len}", pos.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        unsafe { ptr::copy_nonoverlapping(pos.as_ptr(), buf, len) };
        Ok(())
    })
}

/// Number of entries in the best-so-far trace.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_trace_len(result: *const NspsoRunResult) -> usize {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.result.gbest_trace.len())
}

/// Trace entry `index`: evaluations spent, best fitness so far and the
/// leader whose search produced it.
///
/// # Safety
/// `evals`, `best_fitness` and `leader` must each point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn nspso_result_trace_entry(
    result: *const NspsoRunResult,
    index: usize,
    evals: *mut u64,
    best_fitness: *mut f64,
    leader: *mut usize,
) -> NspsoStatus {
    guard(|| {
        let r = unsafe { deref(result, "result") }?;
        let trace = &r.inner.result.gbest_trace;
        let e = trace
            .get(index)
            .ok_or_else(|| Fail(NspsoStatus::OutOfRange, format!("trace index {index} of {}", trace.len())))?;
        unsafe {
            write(evals, e.evals, "evals")?;
            write(best_fitness, e.best_fitness, "best_fitness")?;
            write(leader, e.leader_index, "leader")
        }
    })
}

/// Two-sided rank-sum test of `a` against `b` at level `alpha`.
///
/// # Safety
/// `a` and `b` must point to `na` and `nb` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nspso_wilcoxon_rank_sum(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    alpha: f64,
    out: *mut NspsoRankSum,
) -> NspsoStatus {
    guard(|| {
        let a = unsafe { input(a, na, "a") }?;
        let b = unsafe { input(b, nb, "b") }?;
        let t = harness::wilcoxon_rank_sum(a, b, alpha)?;
        let v = NspsoRankSum { h: t.h, rank_sum: t.rank_sum, z: t.z, p_value: t.p_value };
        unsafe { write(out, v, "out") }
    })
}
