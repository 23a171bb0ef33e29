//! C interface to `sparse_maxcut`.
//!
//! Every fallible function returns an [`SmcStatus`] and writes results
//! through out-pointers. After a failure, [`smc_last_error`] describes it.
//! Graphs are opaque [`SmcGraph`] handles released with [`smc_graph_free`];
//! strings returned by the library are released with [`smc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use sparse_maxcut::graph::{self, Cut, MultiGraph};
use sparse_maxcut::oracles::{self, OccupancySpec};
use sparse_maxcut::{first_moment, second_moment, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Invalid argument.
    Domain = 2,
    /// Bracketing, convergence or divergence failure in a solver.
    Solver = 3,
    /// Size or budget limit exceeded.
    Resource = 4,
}

/// Opaque multigraph handle.
pub struct SmcGraph {
    inner: MultiGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> SmcStatus {
    let status = match e.exit_code() {
        3 => SmcStatus::Solver,
        4 => SmcStatus::Resource,
        _ => SmcStatus::Domain,
    };
    set_error(e.to_string());
    status
}

fn null_arg(name: &str) -> SmcStatus {
    set_error(format!("{name} is null"));
    SmcStatus::NullPointer
}

/// Writes `value` through `out` unless `out` is null.
unsafe fn put<T>(out: *mut T, value: T) {
    if !out.is_null() {
        // SAFETY: caller guarantees `out` is valid for writes when non-null.
        unsafe { out.write(value) };
    }
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn smc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Root `x_u` of the first-moment exponent and the tilt `theta_u` there.
///
/// # Safety
/// `x_u` and `theta_u` must each be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn smc_upper_bound(tol: f64, x_u: *mut f64, theta_u: *mut f64) -> SmcStatus {
    match first_moment::solve_xu(tol) {
        Ok(u) => {
            unsafe {
                put(x_u, u.x_u);
                put(theta_u, u.theta_u);
            }
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Lower-bound constant `x_l` by bisection to `tol_x`. Takes tens of seconds.
///
/// # Safety
/// `x_l` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn smc_lower_bound(tol_x: f64, x_l: *mut f64) -> SmcStatus {
    if x_l.is_null() {
        return null_arg("x_l");
    }
    match second_moment::solve_xl(tol_x) {
        Ok(l) => {
            unsafe { put(x_l, l.x_l) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// First-moment exponent `w(x)`.
///
/// # Safety
/// `w` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn smc_first_moment_w(x: f64, w: *mut f64) -> SmcStatus {
    if w.is_null() {
        return null_arg("w");
    }
    match first_moment::w_value(x) {
        Ok(v) => {
            unsafe { put(w, v) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Second-moment exponent `W(x, beta)`.
///
/// # Safety
/// `w_big` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn smc_second_moment_w(x: f64, beta: f64, w_big: *mut f64) -> SmcStatus {
    if w_big.is_null() {
        return null_arg("w_big");
    }
    match second_moment::w_big(x, beta) {
        Ok(s) => {
            unsafe { put(w_big, s.w_big) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Exact `K(n, mu1, mu2)` as a newly allocated fraction string such as
/// `"3/4"`, released with [`smc_string_free`].
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn smc_k2_exact(
    n: usize,
    mu1: usize,
    mu2: usize,
    out: *mut *mut c_char,
) -> SmcStatus {
    if out.is_null() {
        return null_arg("out");
    }
    match oracles::k2_exact(&OccupancySpec::new(n, vec![mu1, mu2])) {
        Ok(k) => {
            unsafe { put(out, into_c_string(k.to_string())) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn smc_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: `s` came from `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Configuration-model multigraph with `n` vertices and `m` edges.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_generate(
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut SmcGraph,
) -> SmcStatus {
    if out.is_null() {
        return null_arg("out");
    }
    match graph::gen_config_multigraph(n, m, seed) {
        Ok(g) => {
            unsafe { put(out, Box::into_raw(Box::new(SmcGraph { inner: g }))) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Graph from `m` edges given as `2m` consecutive endpoints.
///
/// # Safety
/// `endpoints` must point to `2 * m` readable `size_t` values (or be null when
/// `m == 0`); `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    m: usize,
    out: *mut *mut SmcGraph,
) -> SmcStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if endpoints.is_null() && m > 0 {
        return null_arg("endpoints");
    }
    let flat = if m == 0 {
        &[][..]
    } else {
        // SAFETY: caller guarantees 2m readable values.
        unsafe { std::slice::from_raw_parts(endpoints, 2 * m) }
    };
    let edges = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    match MultiGraph::new(n, edges) {
        Ok(g) => {
            unsafe { put(out, Box::into_raw(Box::new(SmcGraph { inner: g }))) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_free(g: *mut SmcGraph) {
    if !g.is_null() {
        // SAFETY: handle was created by `Box::into_raw`.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_vertex_count(g: *const SmcGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_edge_count(g: *const SmcGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.inner.m())
}

/// Maximum cut value by exhaustive search (at most 20 vertices).
///
/// # Safety
/// `g` must be a live handle; `value` must be valid for writing one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_maxcut(g: *const SmcGraph, value: *mut usize) -> SmcStatus {
    let Some(g) = (unsafe { g.as_ref() }) else {
        return null_arg("g");
    };
    if value.is_null() {
        return null_arg("value");
    }
    match graph::maxcut_bruteforce(&g.inner) {
        Ok(mc) => {
            unsafe { put(value, mc.value) };
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Local-flip search from the all-zero cut. Writes the final cut value and,
/// if `sides` is non-null, one 0/1 byte per vertex.
///
/// # Safety
/// `g` must be a live handle; `value` must be valid for writing one `size_t`;
/// `sides` must be null or valid for writing `smc_graph_vertex_count(g)` bytes.
#[no_mangle]
pub unsafe extern "C" fn smc_graph_local_search(
    g: *const SmcGraph,
    seed: u64,
    value: *mut usize,
    sides: *mut u8,
) -> SmcStatus {
    let Some(g) = (unsafe { g.as_ref() }) else {
        return null_arg("g");
    };
    if value.is_null() {
        return null_arg("value");
    }
    let result = Cut::new(&g.inner, vec![false; g.inner.n()])
        .and_then(|init| graph::local_flip_search(&g.inner, &init, seed));
    match result {
        Ok(cut) => {
            unsafe { put(value, cut.value) };
            if !sides.is_null() {
                for (i, &s) in cut.side.iter().enumerate() {
                    // SAFETY: caller guarantees n writable bytes.
                    unsafe { sides.add(i).write(s as u8) };
                }
            }
            SmcStatus::Ok
        }
        Err(e) => fail(e),
    }
}
