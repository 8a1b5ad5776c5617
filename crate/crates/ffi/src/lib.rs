//! C ABI for `ramsey-nice`.
//!
//! Objects cross the boundary as opaque handles created by the `rn_*_parse` and
//! constructor functions and released with the matching `rn_*_free`. Every fallible call returns an
//! [`RnStatus`]; on failure `rn_last_error()` holds a message for the calling
//! thread. Strings returned by the library must be released with `rn_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ramsey_nice::certificate::{verify, Certificate};
use ramsey_nice::constructions::ach_counterexample;
use ramsey_nice::graph::{chromatic_number, clique_number, Graph};
use ramsey_nice::hypergraph::{chromatic_index, max_matching, PartiteHypergraph};
use ramsey_nice::ramsey::{closed_form_c_k_with, compute_c_k, ForbiddenFamily, SearchOptions};
use ramsey_nice::search::Budget;
use ramsey_nice::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    ParseError = 4,
    BudgetExceeded = 5,
    CapReached = 6,
    VerifyFailed = 7,
    /// The requested value is not known (no closed form, for example).
    NotFound = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

impl From<&Error> for RnStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::OutOfRange { .. } => RnStatus::OutOfRange,
            Error::BudgetExceeded { .. } => RnStatus::BudgetExceeded,
            Error::CapReached { .. } => RnStatus::CapReached,
            Error::Parse(_) => RnStatus::ParseError,
            Error::VerifyFailed(_) => RnStatus::VerifyFailed,
            _ => RnStatus::InvalidArgument,
        }
    }
}

/// Opaque simple graph.
pub struct RnGraph(Graph);
/// Opaque forbidden family.
pub struct RnFamily(ForbiddenFamily);
/// Opaque partite hypergraph.
pub struct RnHypergraph(PartiteHypergraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (RnStatus, String)>) -> RnStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RnStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside ramsey-nice".into());
            RnStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (RnStatus, String) {
    ((&e).into(), format!("{}: {e}", e.code()))
}

fn null(what: &str) -> (RnStatus, String) {
    (RnStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RnStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (RnStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), (RnStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RnStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn budget(max_nodes: u64) -> Budget {
    if max_nodes == 0 {
        Budget::default()
    } else {
        Budget::new(max_nodes)
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn rn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// graphs

/// Parses a graph in the text format ("n m" then m lines "u v").
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_parse(text: *const c_char, out: *mut *mut RnGraph) -> RnStatus {
    guard(|| {
        let g = Graph::parse_text(str_arg(text, "text")?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RnGraph(g))), "out")
    })
}

/// Creates the complete graph K_n.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_complete(n: usize, out: *mut *mut RnGraph) -> RnStatus {
    guard(|| {
        let g = Graph::complete(n).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RnGraph(g))), "out")
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_free(g: *mut RnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_vertex_count(g: *const RnGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_edge_count(g: *const RnGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_add_edge(g: *mut RnGraph, u: usize, v: usize) -> RnStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.0.add_edge(u, v).map_err(lib_err)
    })
}

/// Exact chromatic number. `budget_nodes` 0 means the default node budget.
/// When `colors` is non-null it receives `n` vertex colors.
///
/// # Safety
/// `g` must be a valid handle, `out` valid, `colors` null or of length `n`.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_chromatic_number(
    g: *const RnGraph,
    budget_nodes: u64,
    out: *mut usize,
    colors: *mut usize,
) -> RnStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let ch = chromatic_number(&g.0, budget(budget_nodes)).map_err(lib_err)?;
        if !colors.is_null() {
            ptr::copy_nonoverlapping(ch.witness.colors.as_ptr(), colors, ch.witness.colors.len());
        }
        write_out(out, ch.value, "out")
    })
}

/// Exact clique number.
///
/// # Safety
/// `g` must be a valid handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_graph_clique_number(g: *const RnGraph, budget_nodes: u64, out: *mut usize) -> RnStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let cl = clique_number(&g.0, budget(budget_nodes)).map_err(lib_err)?;
        write_out(out, cl.value, "out")
    })
}

// forbidden families

/// Parses a family such as "F4" or "K3,MATCH:2".
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_family_parse(spec: *const c_char, out: *mut *mut RnFamily) -> RnStatus {
    guard(|| {
        let f = ForbiddenFamily::parse(str_arg(spec, "spec")?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RnFamily(f))), "out")
    })
}

/// # Safety
/// `f` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rn_family_free(f: *mut RnFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// c_k of the family: the largest n <= cap whose complete graph has a k-coloring
/// with no monochromatic pattern, proven exact by exhausting n + 1.
///
/// # Safety
/// `f` must be a valid handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_compute_c_k(
    f: *const RnFamily,
    k: usize,
    cap: usize,
    budget_nodes: u64,
    out: *mut usize,
) -> RnStatus {
    guard(|| {
        let f = handle(f, "family")?;
        let opts = SearchOptions { budget: budget(budget_nodes), ..Default::default() };
        let r = compute_c_k(&f.0, k, cap, &opts).map_err(lib_err)?;
        write_out(out, r.value, "out")
    })
}

/// Known closed form for c_k. Returns `NotFound` when none applies. The flags
/// report whether the form holds only for large k, or only if `delta0` is valid.
///
/// # Safety
/// `f` must be a valid handle; `out` valid; flag pointers null or valid.
#[no_mangle]
pub unsafe extern "C" fn rn_closed_form_c_k(
    f: *const RnFamily,
    k: u64,
    delta0: u64,
    out: *mut u64,
    asymptotic_only: *mut bool,
    conditional: *mut bool,
) -> RnStatus {
    guard(|| {
        let f = handle(f, "family")?;
        let cf = closed_form_c_k_with(&f.0, k, delta0)
            .ok_or_else(|| (RnStatus::NotFound, format!("no closed form for k = {k}")))?;
        if !asymptotic_only.is_null() {
            asymptotic_only.write(cf.asymptotic_only);
        }
        if !conditional.is_null() {
            conditional.write(cf.conditional);
        }
        write_out(out, cf.value, "out")
    })
}

// hypergraphs

/// Parses a hypergraph ("r", part sizes, then one edge per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_hypergraph_parse(
    text: *const c_char,
    allow_multi: bool,
    out: *mut *mut RnHypergraph,
) -> RnStatus {
    guard(|| {
        let h = PartiteHypergraph::parse_text(str_arg(text, "text")?, allow_multi).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RnHypergraph(h))), "out")
    })
}

/// The d-regular counterexample to the conjectured matching bound.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rn_ach_counterexample(d: usize, out: *mut *mut RnHypergraph) -> RnStatus {
    guard(|| {
        let (h, _) = ach_counterexample(d).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(RnHypergraph(h))), "out")
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rn_hypergraph_free(h: *mut RnHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn rn_hypergraph_edge_count(h: *const RnHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.edges().len())
}

/// Text form of the hypergraph; free with `rn_string_free`.
///
/// # Safety
/// `h` must be a valid handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_hypergraph_to_text(h: *const RnHypergraph, out: *mut *mut c_char) -> RnStatus {
    guard(|| {
        let h = handle(h, "hypergraph")?;
        write_out(out, into_c_string(h.0.to_text()), "out")
    })
}

/// Maximum matching size.
///
/// # Safety
/// `h` must be a valid handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_max_matching(h: *const RnHypergraph, budget_nodes: u64, out: *mut usize) -> RnStatus {
    guard(|| {
        let h = handle(h, "hypergraph")?;
        let mm = max_matching(&h.0, budget(budget_nodes)).map_err(lib_err)?;
        write_out(out, mm.size, "out")
    })
}

/// Chromatic index (at most 64 edges).
///
/// # Safety
/// `h` must be a valid handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rn_chromatic_index(h: *const RnHypergraph, budget_nodes: u64, out: *mut usize) -> RnStatus {
    guard(|| {
        let h = handle(h, "hypergraph")?;
        let ch = chromatic_index(&h.0, budget(budget_nodes)).map_err(lib_err)?;
        write_out(out, ch.value, "out")
    })
}

// certificates and the command line

/// Re-checks a JSON certificate without searching. Returns `Ok` when it
/// verifies, `VerifyFailed` or `ParseError` otherwise.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rn_certificate_verify(json: *const c_char) -> RnStatus {
    guard(|| {
        let c = Certificate::from_json(str_arg(json, "json")?).map_err(lib_err)?;
        verify(&c).map(|_| ()).map_err(lib_err)
    })
}

/// Runs one command-line invocation (`argv[0]` is the program name). Standard
/// output goes to `out_stdout` and standard error to `out_stderr` (either may be
/// null); free both with `rn_string_free`. `exit_code` receives 0 for a definitive
/// outcome, 2 for unknown, 1 for errors.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; out pointers null or valid.
#[no_mangle]
pub unsafe extern "C" fn rn_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> RnStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let args = (0..argc)
            .map(|i| str_arg(*argv.add(i), "argv entry").map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        let (mut so, mut se) = (Vec::new(), Vec::new());
        let code = ramsey_nice::cli::run_with(args, &mut so, &mut se);
        if !out_stdout.is_null() {
            out_stdout.write(into_c_string(String::from_utf8_lossy(&so).into_owned()));
        }
        if !out_stderr.is_null() {
            out_stderr.write(into_c_string(String::from_utf8_lossy(&se).into_owned()));
        }
        write_out(exit_code, code, "exit_code")
    })
}
