//! C ABI for the bandwidth solver.
//!
//! Graphs and results are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`BwStatus`]; on an error status, [`bw_last_error`] describes the
//! failure. No call unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use bandwidth::mc::{kappa_for, optimize_weights, McWeights, WeightSearch};
use bandwidth::oracle::oracle_bandwidth;
use bandwidth::solver::decide_any;
use bandwidth::{minimize_bandwidth, Budget, Decision, Graph, SolveError, SolveResult, SolverConfig, Status};

/// Result codes. Non-negative values are outcomes, negative values errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwStatus {
    /// Success; for a decision, "yes".
    Ok = 0,
    /// The decision answer is "no".
    No = 1,
    /// The budget ran out before an answer was proven.
    Unknown = 2,
    NullPointer = -1,
    Parse = -2,
    InvalidArgument = -3,
    TooLarge = -4,
    Panic = -5,
}

/// Solver settings. Zero in `max_states` or `time_limit_ms` means no
/// override of the default.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BwOptions {
    pub root: usize,
    pub workers: usize,
    pub max_states: u64,
    pub time_limit_ms: u64,
}

/// Opaque graph handle.
pub struct BwGraph(Graph);

/// Opaque solve result handle.
pub struct BwResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn error_status(e: &SolveError) -> BwStatus {
    set_error(e.to_string());
    match e {
        SolveError::TooLarge { .. } => BwStatus::TooLarge,
        _ => BwStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> BwStatus) -> BwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            BwStatus::Panic
        }
    }
}

fn config(opts: *const BwOptions) -> SolverConfig {
    // SAFETY: callers pass null or a valid pointer
    let Some(o) = (unsafe { opts.as_ref() }) else {
        return SolverConfig::default();
    };
    let mut budget = Budget::default();
    if o.max_states > 0 {
        budget.max_states_per_run = o.max_states;
        budget.max_states_total = Some(o.max_states);
    }
    if o.time_limit_ms > 0 {
        budget.time_limit = Some(Duration::from_millis(o.time_limit_ms));
    }
    SolverConfig {
        root: o.root,
        workers: o.workers.max(1),
        budget,
    }
}

/// Message for the most recent error on this thread, or null. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn bw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn bw_options_default() -> BwOptions {
    BwOptions {
        root: 0,
        workers: 1,
        max_states: 0,
        time_limit_ms: 0,
    }
}

/// Edgeless graph on `n` vertices.
#[no_mangle]
pub extern "C" fn bw_graph_new(n: usize) -> *mut BwGraph {
    Box::into_raw(Box::new(BwGraph(Graph::new(n))))
}

/// Parses the edge-list text format into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_parse(text: *const c_char, out: *mut *mut BwGraph) -> BwStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            set_error("null argument");
            return BwStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("input is not valid UTF-8");
            return BwStatus::Parse;
        };
        match Graph::parse(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(BwGraph(g)));
                BwStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                BwStatus::Parse
            }
        }
    })
}

/// Adds the edge `uv`; adding an existing edge is not an error.
///
/// # Safety
/// `g` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_add_edge(g: *mut BwGraph, u: usize, v: usize) -> BwStatus {
    guard(|| {
        let Some(g) = g.as_mut() else {
            set_error("null graph");
            return BwStatus::NullPointer;
        };
        match g.0.add_edge(u, v) {
            Ok(_) => BwStatus::Ok,
            Err(e) => {
                set_error(e.to_string());
                BwStatus::InvalidArgument
            }
        }
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_vertex_count(g: *const BwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_edge_count(g: *const BwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bw_graph_free(g: *mut BwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Exact bandwidth of `g`. `opts` may be null for defaults. Returns
/// `Unknown` (with a result holding the best ordering found) when the
/// budget ran out.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_solve(
    g: *const BwGraph,
    opts: *const BwOptions,
    out: *mut *mut BwResult,
) -> BwStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            set_error("null argument");
            return BwStatus::NullPointer;
        };
        match minimize_bandwidth(&g.0, &config(opts)) {
            Ok(r) => {
                let status = match r.status {
                    Status::Optimal => BwStatus::Ok,
                    Status::Unknown => BwStatus::Unknown,
                };
                *out = Box::into_raw(Box::new(BwResult(r)));
                status
            }
            Err(e) => error_status(&e),
        }
    })
}

/// Decides whether `g` has an ordering of bandwidth at most `b`. Returns
/// `Ok` for yes, `No` or `Unknown`. On yes, the witness is stored in
/// `*witness` when `witness` is not null.
///
/// # Safety
/// `g` must be a live handle; `witness` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn bw_decide(
    g: *const BwGraph,
    b: usize,
    opts: *const BwOptions,
    witness: *mut *mut BwResult,
) -> BwStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            set_error("null graph");
            return BwStatus::NullPointer;
        };
        match decide_any(&g.0, b, &config(opts)) {
            Ok((Decision::Yes(pi), calls)) => {
                if !witness.is_null() {
                    let width = pi.bandwidth(&g.0);
                    let mut stats = bandwidth::solver::SolveStats::default();
                    for c in &calls {
                        stats.assignments_generated += c.assignments_generated;
                        stats.assignments_accepted += c.assignments_accepted;
                        stats.states_total += c.states_total;
                        stats.states_max_run = stats.states_max_run.max(c.states_max_run);
                    }
                    stats.decide_calls = calls;
                    *witness = Box::into_raw(Box::new(BwResult(SolveResult {
                        bandwidth: width,
                        lower_bound: 0,
                        ordering: pi,
                        status: Status::Unknown,
                        stats,
                    })));
                }
                BwStatus::Ok
            }
            Ok((Decision::No, _)) => BwStatus::No,
            Ok((Decision::Unknown(h), _)) => {
                set_error(format!("budget exhausted: {h:?}"));
                BwStatus::Unknown
            }
            Err(e) => error_status(&e),
        }
    })
}

/// Exact bandwidth by exhaustive search; refuses graphs over `limit`
/// vertices with `TooLarge`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_oracle(g: *const BwGraph, limit: usize, out: *mut *mut BwResult) -> BwStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            set_error("null argument");
            return BwStatus::NullPointer;
        };
        match oracle_bandwidth(&g.0, limit) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(BwResult(r)));
                BwStatus::Ok
            }
            Err(e) => error_status(&e),
        }
    })
}

/// Bandwidth of the result's ordering.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn bw_result_bandwidth(r: *const BwResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.bandwidth)
}

/// Proven lower bound; equal to the bandwidth when optimal.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn bw_result_lower_bound(r: *const BwResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.lower_bound)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn bw_result_is_optimal(r: *const BwResult) -> bool {
    r.as_ref().is_some_and(|r| r.0.status == Status::Optimal)
}

/// Copies the 1-based position of each vertex into `buf` (up to `len`
/// entries) and returns the vertex count.
///
/// # Safety
/// `r` must be a live result handle; `buf` must be null or hold `len`
/// writable entries.
#[no_mangle]
pub unsafe extern "C" fn bw_result_positions(r: *const BwResult, buf: *mut usize, len: usize) -> usize {
    let Some(r) = r.as_ref() else { return 0 };
    let pos = r.0.ordering.positions();
    if !buf.is_null() {
        let k = len.min(pos.len());
        ptr::copy_nonoverlapping(pos.as_ptr(), buf, k);
    }
    pos.len()
}

/// The result as a JSON object; free with [`bw_string_free`]. Null on
/// failure.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn bw_result_to_json(r: *const BwResult) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("null result");
        return ptr::null_mut();
    };
    serde_json::to_string(&r.0)
        .ok()
        .and_then(|s| CString::new(s).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `r` must be null or a result handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bw_result_free(r: *mut BwResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Smallest branching base meeting every state-count constraint under the
/// weights `alpha`, `beta` in (0, 1].
///
/// # Safety
/// `kappa` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bw_kappa_for(alpha: f64, beta: f64, kappa: *mut f64) -> BwStatus {
    guard(|| {
        if kappa.is_null() {
            set_error("null output");
            return BwStatus::NullPointer;
        }
        match McWeights::new(alpha, beta) {
            Ok(w) => {
                *kappa = kappa_for(w, 1e-12).kappa;
                BwStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                BwStatus::InvalidArgument
            }
        }
    })
}

/// Searches the weight grid with default settings and writes the best
/// weights and base.
///
/// # Safety
/// All three outputs must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn bw_optimize_weights(alpha: *mut f64, beta: *mut f64, kappa: *mut f64) -> BwStatus {
    guard(|| {
        if alpha.is_null() || beta.is_null() || kappa.is_null() {
            set_error("null output");
            return BwStatus::NullPointer;
        }
        match optimize_weights(&WeightSearch::default()) {
            Ok(b) => {
                *alpha = b.weights.alpha;
                *beta = b.weights.beta;
                *kappa = b.kappa;
                BwStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                BwStatus::InvalidArgument
            }
        }
    })
}
