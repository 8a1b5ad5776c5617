#ifndef RAMSEY_NICE_H
#define RAMSEY_NICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes returned by every fallible function.
typedef enum RnStatus {
  RN_STATUS_OK = 0,
  RN_STATUS_NULL_POINTER = 1,
  RN_STATUS_INVALID_ARGUMENT = 2,
  RN_STATUS_OUT_OF_RANGE = 3,
  RN_STATUS_PARSE_ERROR = 4,
  RN_STATUS_BUDGET_EXCEEDED = 5,
  RN_STATUS_CAP_REACHED = 6,
  RN_STATUS_VERIFY_FAILED = 7,
  // The requested value is not known (no closed form, for example).
  RN_STATUS_NOT_FOUND = 8,
  // A panic was caught at the boundary.
  RN_STATUS_INTERNAL = 9,
} RnStatus;

// Opaque forbidden family.
typedef struct RnFamily RnFamily;

// Opaque simple graph.
typedef struct RnGraph RnGraph;

// Opaque partite hypergraph.
typedef struct RnHypergraph RnHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into the library on the same thread; do not free.
const char *rn_last_error(void);

// Library version as a static NUL-terminated string.
const char *rn_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rn_string_free(char *s);

// Parses a graph in the text format ("n m" then m lines "u v").
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum RnStatus rn_graph_parse(const char *text, struct RnGraph **out);

// Creates the complete graph K_n.
//
// # Safety
// `out` must be a valid pointer.
enum RnStatus rn_graph_complete(size_t n, struct RnGraph **out);

// # Safety
// `g` must come from this library and not be freed twice. Null is ignored.
void rn_graph_free(struct RnGraph *g);

// # Safety
// `g` must be a valid handle.
size_t rn_graph_vertex_count(const struct RnGraph *g);

// # Safety
// `g` must be a valid handle.
size_t rn_graph_edge_count(const struct RnGraph *g);

// # Safety
// `g` must be a valid handle.
enum RnStatus rn_graph_add_edge(struct RnGraph *g, size_t u, size_t v);

// Exact chromatic number. `budget_nodes` 0 means the default node budget.
// When `colors` is non-null it receives `n` vertex colors.
//
// # Safety
// `g` must be a valid handle, `out` valid, `colors` null or of length `n`.
enum RnStatus rn_graph_chromatic_number(const struct RnGraph *g,
                                        uint64_t budget_nodes,
                                        size_t *out,
                                        size_t *colors);

// Exact clique number.
//
// # Safety
// `g` must be a valid handle and `out` valid.
enum RnStatus rn_graph_clique_number(const struct RnGraph *g, uint64_t budget_nodes, size_t *out);

// Parses a family such as "F4" or "K3,MATCH:2".
//
// # Safety
// `spec` must be a NUL-terminated string and `out` valid.
enum RnStatus rn_family_parse(const char *spec, struct RnFamily **out);

// # Safety
// `f` must come from this library and not be freed twice. Null is ignored.
void rn_family_free(struct RnFamily *f);

// c_k of the family: the largest n <= cap whose complete graph has a k-coloring
// with no monochromatic pattern, proven exact by exhausting n + 1.
//
// # Safety
// `f` must be a valid handle and `out` valid.
enum RnStatus rn_compute_c_k(const struct RnFamily *f,
                             size_t k,
                             size_t cap,
                             uint64_t budget_nodes,
                             size_t *out);

// Known closed form for c_k. Returns `NotFound` when none applies. The flags
// report whether the form holds only for large k, or only if `delta0` is valid.
//
// # Safety
// `f` must be a valid handle; `out` valid; flag pointers null or valid.
enum RnStatus rn_closed_form_c_k(const struct RnFamily *f,
                                 uint64_t k,
                                 uint64_t delta0,
                                 uint64_t *out,
                                 bool *asymptotic_only,
                                 bool *conditional);

// Parses a hypergraph ("r", part sizes, then one edge per line).
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid.
enum RnStatus rn_hypergraph_parse(const char *text, bool allow_multi, struct RnHypergraph **out);

// The d-regular counterexample to the conjectured matching bound.
//
// # Safety
// `out` must be valid.
enum RnStatus rn_ach_counterexample(size_t d, struct RnHypergraph **out);

// # Safety
// `h` must come from this library and not be freed twice. Null is ignored.
void rn_hypergraph_free(struct RnHypergraph *h);

// # Safety
// `h` must be a valid handle.
size_t rn_hypergraph_edge_count(const struct RnHypergraph *h);

// Text form of the hypergraph; free with `rn_string_free`.
//
// # Safety
// `h` must be a valid handle and `out` valid.
enum RnStatus rn_hypergraph_to_text(const struct RnHypergraph *h, char **out);

// Maximum matching size.
//
// # Safety
// `h` must be a valid handle and `out` valid.
enum RnStatus rn_max_matching(const struct RnHypergraph *h, uint64_t budget_nodes, size_t *out);

// Chromatic index (at most 64 edges).
//
// # Safety
// `h` must be a valid handle and `out` valid.
enum RnStatus rn_chromatic_index(const struct RnHypergraph *h, uint64_t budget_nodes, size_t *out);

// Re-checks a JSON certificate without searching. Returns `Ok` when it
// verifies, `VerifyFailed` or `ParseError` otherwise.
//
// # Safety
// `json` must be a NUL-terminated string.
enum RnStatus rn_certificate_verify(const char *json);

// Runs one command-line invocation (`argv[0]` is the program name). Standard
// output goes to `out_stdout` and standard error to `out_stderr` (either may be
// null); free both with `rn_string_free`. `exit_code` receives 0 for a definitive
// outcome, 2 for unknown, 1 for errors.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; out pointers null or valid.
enum RnStatus rn_run(size_t argc,
                     const char *const *argv,
                     int32_t *exit_code,
                     char **out_stdout,
                     char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAMSEY_NICE_H */
