//! C ABI for the eigenbound laboratory.
//!
//! Conventions:
//! - Graphs are opaque handles created by the `eb_graph_*` constructors and
//!   released with [`eb_graph_free`].
//! - Every fallible call returns an [`EbStatus`]; outputs come back through
//!   pointers. On any status other than `EB_STATUS_OK` the outputs are left
//!   untouched and a message is available via [`eb_last_error_message`].
//! - Strings returned through `char**` are NUL-terminated, UTF-8, allocated
//!   by this library, and must be released with [`eb_string_free`].
//! - Structured results (bound checks, certificates, mu estimates, searches)
//!   are returned as JSON in the same schema the CLI emits.
//!
//! All entry points catch panics, so no unwinding crosses the boundary.

use eigenbound::bounds::{brute_force_m, check_graph, ConstantSource};
use eigenbound::cli::{certify, envelope_json};
use eigenbound::eigen::{self, ToleranceProfile};
use eigenbound::graph::{self, Graph};
use eigenbound::projconst::{self, mu_alternating, mu_exhaustive};
use libc::{c_char, size_t};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EbStatus {
    Ok = 0,
    /// A NULL pointer where one is not allowed.
    NullPointer = 1,
    /// Arguments outside the documented domain (ranks, orders, sizes).
    InvalidArgument = 2,
    /// Input text failed to parse (graph6, edge lists, source names).
    ParseError = 3,
    /// A solver cap was exceeded (enumeration bits, brute-force order).
    CapExceeded = 4,
    /// The provided buffer is too small; required length is reported.
    BufferTooSmall = 5,
    /// Internal failure (solver non-convergence or a caught panic).
    InternalError = 6,
}

/// Opaque graph handle.
pub struct EbGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn guarded<F: FnOnce() -> EbStatus>(f: F) -> EbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in eigenbound".to_string());
            set_error(msg);
            EbStatus::InternalError
        }
    }
}

fn hand_out_graph(g: Graph, out: *mut *mut EbGraph) -> EbStatus {
    unsafe { *out = Box::into_raw(Box::new(EbGraph { inner: g })) };
    EbStatus::Ok
}

fn hand_out_string(text: String, out: *mut *mut c_char) -> EbStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            EbStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            EbStatus::InternalError
        }
    }
}

unsafe fn graph_ref<'a>(g: *const EbGraph) -> Option<&'a Graph> {
    g.as_ref().map(|h| &h.inner)
}

unsafe fn str_arg<'a>(text: *const c_char) -> Result<&'a str, EbStatus> {
    if text.is_null() {
        set_error("NULL string argument");
        return Err(EbStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        EbStatus::ParseError
    })
}

/// Copy of the most recent error message on this thread, or NULL text when
/// no error has occurred. The copy must be freed with `eb_string_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `char *`.
#[no_mangle]
pub unsafe extern "C" fn eb_last_error_message(out: *mut *mut c_char) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
    match msg {
        Some(c) => {
            *out = c.into_raw();
            EbStatus::Ok
        }
        None => {
            *out = std::ptr::null_mut();
            EbStatus::Ok
        }
    }
}

/// Frees a string allocated by this library. NULL is accepted.
///
/// # Safety
/// `s` must have been returned by an eigenbound call and not freed before.
#[no_mangle]
pub unsafe extern "C" fn eb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a graph handle. NULL is accepted.
///
/// # Safety
/// `g` must have been returned by an `eb_graph_*` constructor and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_free(g: *mut EbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a one-byte-size graph6 string (n <= 62).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_from_graph6(
    text: *const c_char,
    out: *mut *mut EbGraph,
) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match graph::parse_graph6(text) {
            Ok(g) => hand_out_graph(g, out),
            Err(e) => {
                set_error(e.to_string());
                EbStatus::ParseError
            }
        }
    })
}

/// Builds a graph from `num_edges` vertex pairs laid out as
/// `[i0, j0, i1, j1, ...]` (2 * num_edges entries).
///
/// # Safety
/// `endpoints` must point to `2 * num_edges` readable u32 values (may be
/// NULL when `num_edges` is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_from_edge_list(
    n: u32,
    endpoints: *const u32,
    num_edges: size_t,
    out: *mut *mut EbGraph,
) -> EbStatus {
    if out.is_null() || (endpoints.is_null() && num_edges > 0) {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        if n == 0 {
            set_error("graph must have at least one vertex");
            return EbStatus::InvalidArgument;
        }
        let flat = if num_edges == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(endpoints, 2 * num_edges)
        };
        let edges: Vec<(usize, usize)> = flat
            .chunks_exact(2)
            .map(|pair| (pair[0] as usize, pair[1] as usize))
            .collect();
        match Graph::from_edge_list(n as usize, &edges) {
            Ok(g) => hand_out_graph(g, out),
            Err(e) => {
                set_error(e.to_string());
                EbStatus::InvalidArgument
            }
        }
    })
}

/// Disjoint union of k cliques of size m.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_cliques(k: u32, m: u32, out: *mut *mut EbGraph) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        if k == 0 || m == 0 {
            set_error("clique parameters must be positive");
            return EbStatus::InvalidArgument;
        }
        hand_out_graph(graph::union_cliques(k as usize, m as usize), out)
    })
}

/// The 12-vertex icosahedral graph in its fixed labeling.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_icosahedron(out: *mut *mut EbGraph) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| hand_out_graph(graph::icosahedron(), out))
}

/// The Paley graph on 9 vertices in its fixed labeling.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_paley9(out: *mut *mut EbGraph) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| hand_out_graph(graph::paley9(), out))
}

/// Complement graph.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_complement(
    g: *const EbGraph,
    out: *mut *mut EbGraph,
) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| match graph_ref(g) {
        Some(g) => hand_out_graph(g.complement(), out),
        None => EbStatus::NullPointer,
    })
}

/// Closed blowup: every vertex becomes a t-clique, every edge a join.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_closed_blowup(
    g: *const EbGraph,
    t: u32,
    out: *mut *mut EbGraph,
) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return EbStatus::NullPointer;
        };
        if t == 0 {
            set_error("blowup factor must be positive");
            return EbStatus::InvalidArgument;
        }
        hand_out_graph(g.closed_blowup(t as usize), out)
    })
}

/// Number of vertices; 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_order(g: *const EbGraph) -> u32 {
    graph_ref(g).map_or(0, |g| g.order() as u32)
}

/// graph6 encoding of the graph (n <= 62).
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_to_graph6(
    g: *const EbGraph,
    out: *mut *mut c_char,
) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return EbStatus::NullPointer;
        };
        match graph::to_graph6(g) {
            Ok(text) => hand_out_string(text, out),
            Err(e) => {
                set_error(e.to_string());
                EbStatus::InvalidArgument
            }
        }
    })
}

/// Writes the adjacency spectrum in non-increasing order into `out`.
/// `len` must be at least the graph order.
///
/// # Safety
/// `g` must be a live graph handle and `out` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn eb_graph_spectrum(
    g: *const EbGraph,
    out: *mut f64,
    len: size_t,
) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return EbStatus::NullPointer;
        };
        if len < g.order() {
            set_error(format!("buffer holds {len}, need {}", g.order()));
            return EbStatus::BufferTooSmall;
        }
        match eigen::eigenvalues(&g.adjacency_matrix()) {
            Ok(s) => {
                let dst = std::slice::from_raw_parts_mut(out, g.order());
                dst.copy_from_slice(s.values());
                EbStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                EbStatus::InternalError
            }
        }
    })
}

fn parse_source(name: &str) -> Option<ConstantSource> {
    match name {
        "known_lambda" => Some(ConstantSource::KnownLambda),
        "nikiforov" => Some(ConstantSource::Nikiforov),
        "sivashankar" => Some(ConstantSource::Sivashankar),
        _ => None,
    }
}

/// Bound report for lambda_k of the graph as JSON; `source` is one of
/// "known_lambda", "nikiforov", "sivashankar".
///
/// # Safety
/// `g` must be a live graph handle, `source` a NUL-terminated string, and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_bound_check_json(
    g: *const EbGraph,
    k: u32,
    source: *const c_char,
    out_json: *mut *mut c_char,
) -> EbStatus {
    if out_json.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return EbStatus::NullPointer;
        };
        let name = match str_arg(source) {
            Ok(n) => n,
            Err(status) => return status,
        };
        let Some(source) = parse_source(name) else {
            set_error(format!("unknown source {name:?}"));
            return EbStatus::ParseError;
        };
        match check_graph(g, k as usize, source) {
            Ok(report) => hand_out_string(envelope_json(&report), out_json),
            Err(e) => {
                set_error(e.to_string());
                EbStatus::InvalidArgument
            }
        }
    })
}

/// Entrywise certificate chain at rank k-1 as JSON; `passes` (optional)
/// receives the overall verdict.
///
/// # Safety
/// `g` must be a live graph handle, `out_json` a valid pointer, and
/// `passes` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn eb_certify_json(
    g: *const EbGraph,
    k: u32,
    out_json: *mut *mut c_char,
    passes: *mut bool,
) -> EbStatus {
    if out_json.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        let Some(g) = graph_ref(g) else {
            return EbStatus::NullPointer;
        };
        match certify(g, k as usize, &ToleranceProfile::default()) {
            Ok(report) => {
                if !passes.is_null() {
                    *passes = report.passes;
                }
                hand_out_string(envelope_json(&report), out_json)
            }
            Err(e) => {
                set_error(e);
                EbStatus::InvalidArgument
            }
        }
    })
}

fn mu_error_status(e: &projconst::ProjConstError) -> EbStatus {
    match e {
        projconst::ProjConstError::CapExceeded { .. } => EbStatus::CapExceeded,
        _ => EbStatus::InvalidArgument,
    }
}

/// Exact mu(r, N) by exhaustive sign-pattern enumeration, as JSON.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_mu_exhaustive_json(
    r: u32,
    n: u32,
    out_json: *mut *mut c_char,
) -> EbStatus {
    if out_json.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| match mu_exhaustive(r as usize, n as usize) {
        Ok(est) => hand_out_string(envelope_json(&est), out_json),
        Err(e) => {
            let status = mu_error_status(&e);
            set_error(e.to_string());
            status
        }
    })
}

/// Alternating-ascent estimate of mu(r, N), as JSON.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_mu_alternating_json(
    r: u32,
    n: u32,
    starts: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> EbStatus {
    if out_json.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        if starts == 0 {
            set_error("starts must be positive");
            return EbStatus::InvalidArgument;
        }
        match mu_alternating(r as usize, n as usize, starts as usize, seed) {
            Ok(est) => hand_out_string(envelope_json(&est), out_json),
            Err(e) => {
                let status = mu_error_status(&e);
                set_error(e.to_string());
                status
            }
        }
    })
}

/// Exhaustive M_k(n) scan (n <= 7), as JSON.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_search_json(n: u32, k: u32, out_json: *mut *mut c_char) -> EbStatus {
    if out_json.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| match brute_force_m(n as usize, k as usize, None) {
        Ok(result) => hand_out_string(envelope_json(&result), out_json),
        Err(e) => {
            let status = match e {
                eigenbound::bounds::BoundsError::CapExceeded { .. } => EbStatus::CapExceeded,
                _ => EbStatus::InvalidArgument,
            };
            set_error(e.to_string());
            status
        }
    })
}

/// delta(r, N) = (r/N)(1 + sqrt((N-1)(N-r)/r)).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eb_delta(r: u32, n: u32, out: *mut f64) -> EbStatus {
    if out.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        if r == 0 || r > n {
            set_error(format!("need 1 <= r <= N, got r={r}, N={n}"));
            return EbStatus::InvalidArgument;
        }
        *out = projconst::delta(r as usize, n as usize);
        EbStatus::Ok
    })
}

/// Known value of (or upper bound on) the rank-r projection constant.
/// `exact` (optional) reports whether the value is exact.
///
/// # Safety
/// `value` must be a valid pointer; `exact` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn eb_known_lambda(r: u32, value: *mut f64, exact: *mut bool) -> EbStatus {
    if value.is_null() {
        return EbStatus::NullPointer;
    }
    guarded(|| {
        if r == 0 {
            set_error("rank must be positive");
            return EbStatus::InvalidArgument;
        }
        let record = projconst::known_lambda(r as usize);
        *value = record.value;
        if !exact.is_null() {
            *exact = record.exact;
        }
        EbStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let text = CStr::from_ptr(p).to_str().unwrap().to_string();
        eb_string_free(p);
        text
    }

    #[test]
    fn graph6_round_trip_through_abi() {
        unsafe {
            let mut g: *mut EbGraph = ptr::null_mut();
            let status = eb_graph_from_graph6(c"A_".as_ptr(), &mut g);
            assert_eq!(status, EbStatus::Ok);
            assert_eq!(eb_graph_order(g), 2);

            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(eb_graph_to_graph6(g, &mut s), EbStatus::Ok);
            assert_eq!(take_string(s), "A_");
            eb_graph_free(g);
        }
    }

    #[test]
    fn parse_error_sets_message() {
        unsafe {
            let mut g: *mut EbGraph = ptr::null_mut();
            let status = eb_graph_from_graph6(c"~??".as_ptr(), &mut g);
            assert_eq!(status, EbStatus::ParseError);
            let mut msg: *mut c_char = ptr::null_mut();
            assert_eq!(eb_last_error_message(&mut msg), EbStatus::Ok);
            let text = take_string(msg);
            assert!(text.contains("extended"), "{text}");
        }
    }

    #[test]
    fn spectrum_of_icosahedron() {
        unsafe {
            let mut g: *mut EbGraph = ptr::null_mut();
            assert_eq!(eb_graph_icosahedron(&mut g), EbStatus::Ok);
            let mut values = [0.0f64; 12];
            assert_eq!(
                eb_graph_spectrum(g, values.as_mut_ptr(), values.len()),
                EbStatus::Ok
            );
            assert!((values[0] - 5.0).abs() < 1e-9);
            assert!((values[3] - 5f64.sqrt()).abs() < 1e-9);

            let mut short = [0.0f64; 4];
            assert_eq!(
                eb_graph_spectrum(g, short.as_mut_ptr(), short.len()),
                EbStatus::BufferTooSmall
            );
            eb_graph_free(g);
        }
    }

    #[test]
    fn bound_check_json_shape() {
        unsafe {
            let mut g: *mut EbGraph = ptr::null_mut();
            assert_eq!(eb_graph_cliques(3, 4, &mut g), EbStatus::Ok);
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(
                eb_bound_check_json(g, 3, c"known_lambda".as_ptr(), &mut json),
                EbStatus::Ok
            );
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(v["schema_version"], 1);
            assert_eq!(v["equality"], true);
            assert!((v["lambda_k"].as_f64().unwrap() - 3.0).abs() < 1e-9);

            let mut bad: *mut c_char = ptr::null_mut();
            assert_eq!(
                eb_bound_check_json(g, 3, c"unknown".as_ptr(), &mut bad),
                EbStatus::ParseError
            );
            eb_graph_free(g);
        }
    }

    #[test]
    fn certify_and_blowup() {
        unsafe {
            let mut p9: *mut EbGraph = ptr::null_mut();
            assert_eq!(eb_graph_paley9(&mut p9), EbStatus::Ok);
            let mut blown: *mut EbGraph = ptr::null_mut();
            assert_eq!(eb_graph_closed_blowup(p9, 2, &mut blown), EbStatus::Ok);
            assert_eq!(eb_graph_order(blown), 18);

            let mut json: *mut c_char = ptr::null_mut();
            let mut passes = false;
            assert_eq!(
                eb_certify_json(blown, 5, &mut json, &mut passes),
                EbStatus::Ok
            );
            assert!(passes);
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!(v["passes"], true);
            eb_graph_free(blown);
            eb_graph_free(p9);
        }
    }

    #[test]
    fn mu_and_scalars() {
        unsafe {
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(eb_mu_exhaustive_json(2, 3, &mut json), EbStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert!((v["lower"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
            assert_eq!(v["sign_pattern"], "000");

            assert_eq!(eb_mu_exhaustive_json(3, 8, &mut json), EbStatus::CapExceeded);

            let mut d = 0.0f64;
            assert_eq!(eb_delta(3, 6, &mut d), EbStatus::Ok);
            assert!((d - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);

            let mut value = 0.0f64;
            let mut exact = true;
            assert_eq!(eb_known_lambda(4, &mut value, &mut exact), EbStatus::Ok);
            assert!(!exact);
            assert!((value - (2.0 + 3.0 * 6f64.sqrt()) / 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_list_and_complement() {
        unsafe {
            let endpoints = [0u32, 1, 1, 2];
            let mut g: *mut EbGraph = ptr::null_mut();
            assert_eq!(
                eb_graph_from_edge_list(3, endpoints.as_ptr(), 2, &mut g),
                EbStatus::Ok
            );
            let mut c: *mut EbGraph = ptr::null_mut();
            assert_eq!(eb_graph_complement(g, &mut c), EbStatus::Ok);
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(eb_graph_to_graph6(c, &mut s), EbStatus::Ok);
            // complement of the path 0-1-2 is the single edge {0,2}
            assert_eq!(take_string(s), "BO");
            eb_graph_free(c);
            eb_graph_free(g);

            let bad = [0u32, 5];
            let mut h: *mut EbGraph = ptr::null_mut();
            assert_eq!(
                eb_graph_from_edge_list(3, bad.as_ptr(), 1, &mut h),
                EbStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn search_json() {
        unsafe {
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(eb_search_json(6, 3, &mut json), EbStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert!((v["max_lambda_k"].as_f64().unwrap() - 1.0).abs() < 1e-9);
            assert_eq!(eb_search_json(9, 3, &mut json), EbStatus::CapExceeded);
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            assert_eq!(eb_graph_order(ptr::null()), 0);
            let mut out: *mut EbGraph = ptr::null_mut();
            assert_eq!(
                eb_graph_from_graph6(ptr::null(), &mut out),
                EbStatus::NullPointer
            );
            assert_eq!(
                eb_graph_complement(ptr::null(), &mut out),
                EbStatus::NullPointer
            );
            eb_string_free(ptr::null_mut());
            eb_graph_free(ptr::null_mut());
        }
    }

    #[test]
    fn generated_header_exists_and_compiles() {
        let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/eigenbound.h");
        let text = std::fs::read_to_string(header).expect("header generated by build.rs");
        for symbol in [
            "EbStatus",
            "EbGraph",
            "eb_graph_from_graph6",
            "eb_graph_spectrum",
            "eb_bound_check_json",
            "eb_mu_exhaustive_json",
            "eb_string_free",
        ] {
            assert!(text.contains(symbol), "header is missing {symbol}");
        }
        // syntax-check with the system C compiler when one is around
        let check = std::process::Command::new("cc")
            .args(["-fsyntax-only", "-x", "c", header])
            .status();
        if let Ok(status) = check {
            assert!(status.success(), "cc rejected the generated header");
        }
    }
}
