//! C ABI over the `cocrit` library.
//!
//! Graphs cross the boundary as opaque `CocritGraph` handles. Every fallible
//! call returns a `CocritStatus`; on anything but `COCRIT_STATUS_OK` a
//! message is available from `cocrit_last_error` until the next call on the
//! same thread. Strings handed out by this library must be released with
//! `cocrit_string_free`, graphs with `cocrit_graph_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cocrit::construction::{self, ConstructionParams};
use cocrit::percolation::{self, RunOptions};
use cocrit::verify;
use cocrit::{Error, Graph, SearchBudget, SearchStatus};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocritStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParams = 4,
    /// A search hit its node or time cap; the answer is unknown.
    BudgetExceeded = 5,
    /// A checked invariant failed or the library panicked.
    Internal = 6,
}

/// Opaque graph handle.
pub struct CocritGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> CocritStatus {
    match e {
        Error::Graph(_) => CocritStatus::Parse,
        Error::Indeterminate { .. } => CocritStatus::BudgetExceeded,
        Error::Invariant { .. } | Error::Progress { .. } => CocritStatus::Internal,
        _ => CocritStatus::InvalidParams,
    }
}

/// Run `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), (CocritStatus, String)>) -> CocritStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CocritStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside cocrit");
            CocritStatus::Internal
        }
    }
}

fn lib<T>(r: cocrit::Result<T>) -> Result<T, (CocritStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (CocritStatus, String) {
    (CocritStatus::NullPointer, "null pointer argument".into())
}

unsafe fn graph_ref<'a>(g: *const CocritGraph) -> Result<&'a Graph, (CocritStatus, String)> {
    g.as_ref().map(|g| &g.0).ok_or_else(null)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (CocritStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

fn budget(node_cap: u64, time_cap_secs: f64) -> Result<SearchBudget, (CocritStatus, String)> {
    lib(SearchBudget::new(node_cap, time_cap_secs, SearchBudget::default().enumeration_cap))
}

/// Message for the last failed call on this thread; empty after a success.
#[no_mangle]
pub extern "C" fn cocrit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn cocrit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cocrit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph6 string into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_graph_from_graph6(text: *const c_char, out: *mut *mut CocritGraph) -> CocritStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (CocritStatus::InvalidUtf8, "input is not UTF-8".to_string()))?;
        let g = lib(cocrit::io::parse_graph6(s.trim()).map_err(Error::from))?;
        *out = Box::into_raw(Box::new(CocritGraph(g)));
        Ok(())
    })
}

/// Build the extremal construction for `(t, k, n)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_construct(t: usize, k: usize, n: usize, out: *mut *mut CocritGraph) -> CocritStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = lib(ConstructionParams::new(t, k, n))?;
        let (g, _) = lib(construction::build(&p))?;
        *out = Box::into_raw(Box::new(CocritGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cocrit_graph_free(g: *mut CocritGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cocrit_graph_order(g: *const CocritGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cocrit_graph_edge_count(g: *const CocritGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable. Free the result with
/// `cocrit_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cocrit_graph_to_graph6(g: *const CocritGraph, out: *mut *mut c_char) -> CocritStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put_string(out, cocrit::io::emit_graph6(g))
    })
}

/// `*out = 1` if every colouring of `g` has a red `K_t` or a blue tree on
/// `k` vertices, `0` if some colouring has neither.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_arrows(
    g: *const CocritGraph,
    t: usize,
    k: usize,
    node_cap: u64,
    time_cap_secs: f64,
    out: *mut i32,
) -> CocritStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let b = budget(node_cap, time_cap_secs)?;
        let o = lib(cocrit::exists_critical_coloring(g, t, k, b))?;
        *out = match o.status {
            SearchStatus::Found => 0,
            SearchStatus::Exhausted => 1,
            SearchStatus::BudgetExceeded => {
                return Err((CocritStatus::BudgetExceeded, format!("gave up after {} nodes", o.nodes_visited)))
            }
        };
        Ok(())
    })
}

/// Verify co-criticality. `*verdict` is 1 or 0; the full report is written
/// as JSON to `*report_json` (may be null to skip). An indeterminate run
/// returns `COCRIT_STATUS_BUDGET_EXCEEDED` and still writes the report.
///
/// # Safety
/// `g` must be a live handle; `verdict` must be writable; `report_json`
/// must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_is_cocritical(
    g: *const CocritGraph,
    t: usize,
    k: usize,
    node_cap: u64,
    time_cap_secs: f64,
    jobs: usize,
    verdict: *mut i32,
    report_json: *mut *mut c_char,
) -> CocritStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if verdict.is_null() {
            return Err(null());
        }
        let b = budget(node_cap, time_cap_secs)?;
        let r = lib(verify::with_jobs(jobs, || verify::is_cocritical(g, t, k, b)))?;
        *verdict = r.is_cocritical as i32;
        if !report_json.is_null() {
            put_string(report_json, serde_json::to_string(&r).expect("report serializes"))?;
        }
        if !r.determinate {
            return Err((CocritStatus::BudgetExceeded, "some non-edge searches hit the budget".into()));
        }
        Ok(())
    })
}

/// Percolation run on the cross graph of the construction's distinguished
/// colouring; the run (certificate and trace) is written as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_percolate_construction(
    t: usize,
    k: usize,
    n: usize,
    q: usize,
    out: *mut *mut c_char,
) -> CocritStatus {
    guard(|| {
        let p = lib(ConstructionParams::new(t, k, n))?;
        let (g, layout) = lib(construction::build(&p))?;
        let blocks = layout.distinguished_blocks();
        let h = lib(cocrit::cross_graph(&g, &blocks))?;
        let run = lib(percolation::run(&h, &blocks, q, None, RunOptions::default()))?;
        put_string(out, serde_json::to_string(&run).expect("run serializes"))
    })
}

/// JSON record of the construction: graph6, roles and the colouring.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cocrit_construction_json(t: usize, k: usize, n: usize, out: *mut *mut c_char) -> CocritStatus {
    guard(|| {
        let p = lib(ConstructionParams::new(t, k, n))?;
        let rec = lib(construction::record(&p))?;
        put_string(out, serde_json::to_string(&rec).expect("record serializes"))
    })
}
