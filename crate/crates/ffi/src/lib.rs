//! C ABI for `csbm-core`.
//!
//! Every fallible function returns an `int32_t` status: [`CSBM_OK`] on
//! success, a positive error code mirroring the core error enum, or one of the
//! negative codes defined here. The message of the last failure on the calling
//! thread is available from [`csbm_last_error_message`].
//!
//! Parameters and graphs are opaque handles created by `*_new`/`*_sample`/
//! `*_read` and released with the matching `*_free`. Community indices and
//! labels are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use csbm_core::graph_io::{read_graph, write_graph};
use csbm_core::harness::{sample_trial, trial_rng, ENCODING_STREAM};
use csbm_core::info_geometry::{ch_divergence, critical_threshold};
use csbm_core::model::exact_recovery;
use csbm_core::recovery::{genie, spec1, spec1_with_y, spec2, spec2k};
use csbm_core::spectral::draw_valid_y_pair;
use csbm_core::{CensoredGraph, CommunityAssignment, CsbmError, ModelParams};

pub const CSBM_OK: i32 = 0;
/// A required pointer argument was null.
pub const CSBM_ERR_NULL_POINTER: i32 = -1;
/// A Rust panic was caught at the boundary.
pub const CSBM_ERR_PANIC: i32 = -2;
/// A string argument was not valid UTF-8.
pub const CSBM_ERR_INVALID_UTF8: i32 = -3;
/// An output buffer was too small.
pub const CSBM_ERR_BUFFER_TOO_SMALL: i32 = -4;
/// Unknown algorithm identifier.
pub const CSBM_ERR_UNKNOWN_ALGO: i32 = -5;

pub const CSBM_ALGO_SPEC1: i32 = 0;
pub const CSBM_ALGO_SPEC1Y: i32 = 1;
pub const CSBM_ALGO_SPEC2: i32 = 2;
pub const CSBM_ALGO_SPEC2K: i32 = 3;
pub const CSBM_ALGO_GENIE: i32 = 4;

/// Opaque model parameters.
pub struct CsbmParams {
    inner: ModelParams,
}

/// Opaque censored graph with its ground-truth labels and reveal intensity.
pub struct CsbmGraph {
    graph: CensoredGraph,
    labels: CommunityAssignment,
    t: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(i32, String);

impl From<CsbmError> for Failure {
    fn from(e: CsbmError) -> Self {
        Failure(e.code(), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CSBM_ERR_NULL_POINTER, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            CSBM_OK
        }
        Ok(Err(Failure(code, msg))) => {
            set_last_error(msg);
            code
        }
        Err(_) => {
            set_last_error("panic in csbm".into());
            CSBM_ERR_PANIC
        }
    }
}

unsafe fn ref_of<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn slice_of<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(unsafe { slice::from_raw_parts(p, len) })
}

unsafe fn path_of(p: *const c_char) -> Result<String, Failure> {
    if p.is_null() {
        return Err(null("path"));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(CSBM_ERR_INVALID_UTF8, "path is not valid UTF-8".into()))
}

unsafe fn write_out<T>(p: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { p.write(v) };
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn csbm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates parameters from `k`, the prior `rho[k]`, the row-major
/// connectivity matrix `p[k*k]` and the reveal intensity `t`.
///
/// # Safety
/// `rho` and `p` must point to `k` and `k*k` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_params_new(k: usize, rho: *const f64, p: *const f64, t: f64, out: *mut *mut CsbmParams) -> i32 {
    guard(|| {
        let rho = unsafe { slice_of(rho, k, "rho") }?.to_vec();
        let p = unsafe { slice_of(p, k * k, "p") }?;
        let rows: Vec<Vec<f64>> = p.chunks(k.max(1)).map(<[f64]>::to_vec).collect();
        let inner = ModelParams::new(rho, rows, t)?;
        unsafe { write_out(out, Box::into_raw(Box::new(CsbmParams { inner })), "out") }
    })
}

/// # Safety
/// `params` must come from [`csbm_params_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn csbm_params_free(params: *mut CsbmParams) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

/// Critical threshold `t_c` and the 1-based pair attaining it.
///
/// # Safety
/// `params` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_critical_threshold(
    params: *const CsbmParams,
    t_c: *mut f64,
    pair_i: *mut usize,
    pair_j: *mut usize,
) -> i32 {
    guard(|| {
        let params = unsafe { ref_of(params, "params") }?;
        let report = critical_threshold(&params.inner)?;
        unsafe {
            write_out(t_c, report.t_c, "t_c")?;
            write_out(pair_i, report.argmin_pair.0 + 1, "pair_i")?;
            write_out(pair_j, report.argmin_pair.1 + 1, "pair_j")
        }
    })
}

/// Maximum `delta_plus` and maximiser `xi_star` of the Chernoff–Hellinger
/// function of two positive vectors of length `len`.
///
/// # Safety
/// `mu` and `nu` must point to `len` readable doubles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_ch_divergence(
    mu: *const f64,
    nu: *const f64,
    len: usize,
    delta_plus: *mut f64,
    xi_star: *mut f64,
) -> i32 {
    guard(|| {
        let (mu, nu) = unsafe { (slice_of(mu, len, "mu")?, slice_of(nu, len, "nu")?) };
        let d = ch_divergence(mu, nu)?;
        unsafe {
            write_out(delta_plus, d.delta_plus, "delta_plus")?;
            write_out(xi_star, d.xi_star, "xi_star")
        }
    })
}

/// Samples labels and a graph on `n` vertices from `seed`.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_sample(
    params: *const CsbmParams,
    n: usize,
    seed: u64,
    enforce_concentration: bool,
    out: *mut *mut CsbmGraph,
) -> i32 {
    guard(|| {
        let params = unsafe { ref_of(params, "params") }?;
        let trial = sample_trial(&params.inner, n, seed, enforce_concentration)?;
        let g = CsbmGraph { graph: trial.graph, labels: trial.sigma0, t: params.inner.t() };
        unsafe { write_out(out, Box::into_raw(Box::new(g)), "out") }
    })
}

/// Reads a graph file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_read(path: *const c_char, out: *mut *mut CsbmGraph) -> i32 {
    guard(|| {
        let file = read_graph(unsafe { path_of(path) }?)?;
        let g = CsbmGraph { graph: file.graph, labels: file.labels, t: file.t };
        unsafe { write_out(out, Box::into_raw(Box::new(g)), "out") }
    })
}

/// Writes a graph file.
///
/// # Safety
/// `graph` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_write(graph: *const CsbmGraph, path: *const c_char) -> i32 {
    guard(|| {
        let g = unsafe { ref_of(graph, "graph") }?;
        write_graph(unsafe { path_of(path) }?, &g.graph, &g.labels, g.t)?;
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_free(graph: *mut CsbmGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_num_vertices(graph: *const CsbmGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.graph.n())
}

/// Number of revealed pairs, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_num_revealed(graph: *const CsbmGraph) -> usize {
    unsafe { graph.as_ref() }.map_or(0, |g| g.graph.num_revealed())
}

/// Copies the ground-truth labels (1-based) into `out[len]`, `len >= n`.
///
/// # Safety
/// `graph` must be a live handle; `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn csbm_graph_labels(graph: *const CsbmGraph, out: *mut u32, len: usize) -> i32 {
    guard(|| {
        let g = unsafe { ref_of(graph, "graph") }?;
        copy_labels(&g.labels, out, len)
    })
}

fn copy_labels(labels: &CommunityAssignment, out: *mut u32, len: usize) -> Result<(), Failure> {
    let n = labels.n();
    if len < n {
        return Err(Failure(CSBM_ERR_BUFFER_TOO_SMALL, format!("buffer of {len} for {n} labels")));
    }
    if out.is_null() {
        return Err(null("out"));
    }
    let dst = unsafe { slice::from_raw_parts_mut(out, n) };
    for (d, &l) in dst.iter_mut().zip(labels.labels()) {
        *d = l as u32 + 1;
    }
    Ok(())
}

/// Runs a recovery algorithm (`CSBM_ALGO_*`) on `graph` with the model of
/// `params` at the graph's reveal intensity, writing 1-based labels to
/// `out[len]`. `spec1y` uses `y1`. The two-matrix algorithms use `(y1, y2)`
/// when both are positive and otherwise draw a pair from `seed`.
///
/// # Safety
/// Handles must be live; `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn csbm_recover(
    graph: *const CsbmGraph,
    params: *const CsbmParams,
    algo: i32,
    y1: f64,
    y2: f64,
    seed: u64,
    out: *mut u32,
    len: usize,
) -> i32 {
    guard(|| {
        let g = unsafe { ref_of(graph, "graph") }?;
        let params = unsafe { ref_of(params, "params") }?.inner.with_t(g.t)?;
        let pair = || -> Result<(f64, f64), CsbmError> {
            if y1 > 0.0 && y2 > 0.0 {
                Ok((y1, y2))
            } else {
                draw_valid_y_pair(&params, &mut trial_rng(seed, ENCODING_STREAM))
            }
        };
        let est = match algo {
            CSBM_ALGO_SPEC1 => spec1(&g.graph, &params)?,
            CSBM_ALGO_SPEC1Y => spec1_with_y(&g.graph, &params, y1)?,
            CSBM_ALGO_SPEC2 => spec2(&g.graph, &params, pair()?)?,
            CSBM_ALGO_SPEC2K => spec2k(&g.graph, &params, pair()?)?,
            CSBM_ALGO_GENIE => genie(&g.graph, &params, &g.labels)?,
            other => return Err(Failure(CSBM_ERR_UNKNOWN_ALGO, format!("unknown algorithm {other}"))),
        };
        copy_labels(&est, out, len)
    })
}

/// Misclassified vertices between two 1-based labelings of length `n` over
/// `k` communities, minimised over label permutations.
///
/// # Safety
/// `a` and `b` must point to `n` readable values; `misclassified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn csbm_exact_recovery(
    a: *const u32,
    b: *const u32,
    n: usize,
    k: usize,
    misclassified: *mut usize,
) -> i32 {
    guard(|| {
        let to_assignment = |s: &[u32]| -> Result<CommunityAssignment, Failure> {
            let labels = s
                .iter()
                .map(|&l| {
                    (l as usize)
                        .checked_sub(1)
                        .ok_or_else(|| Failure::from(CsbmError::InvalidArgument("labels are 1-based".into())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CommunityAssignment::from_labels(labels, k)?)
        };
        let (a, b) = unsafe { (slice_of(a, n, "a")?, slice_of(b, n, "b")?) };
        let out = exact_recovery(&to_assignment(a)?, &to_assignment(b)?)?;
        unsafe { write_out(misclassified, out.misclassified, "misclassified") }
    })
}
