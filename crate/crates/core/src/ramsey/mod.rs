//! Monochromatic-pattern-free edge colorings of complete graphs.

mod closed_form;
mod pattern;
mod search;

pub use closed_form::{closed_form_c_k, closed_form_c_k_with, f7_upper_bound, g_k_upper_bound, ClosedForm};
pub use pattern::{find_copy, has_copy, ForbiddenFamily, Pattern, Shape, MAX_EXPLICIT_VERTICES};
pub use search::{
    compute_c_k, mono_free_coloring, mono_free_search, verify_mono_free, CkResult, EdgeColoring, MonoReport,
    MonoSearch, SearchOptions, Violation, COLORING_SYMMETRY_SCHEME,
};
