#ifndef EIGENBOUND_H
#define EIGENBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  EB_STATUS_OK = 0,
  /**
   * A NULL pointer where one is not allowed.
   */
  EB_STATUS_NULL_POINTER = 1,
  /**
   * Arguments outside the documented domain (ranks, orders, sizes).
   */
  EB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input text failed to parse (graph6, edge lists, source names).
   */
  EB_STATUS_PARSE_ERROR = 3,
  /**
   * A solver cap was exceeded (enumeration bits, brute-force order).
   */
  EB_STATUS_CAP_EXCEEDED = 4,
  /**
   * The provided buffer is too small; required length is reported.
   */
  EB_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Internal failure (solver non-convergence or a caught panic).
   */
  EB_STATUS_INTERNAL_ERROR = 6,
} EbStatus;

/**
 * Opaque graph handle.
 */
typedef struct EbGraph EbGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the most recent error message on this thread, or NULL text when
 * no error has occurred. The copy must be freed with `eb_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `char *`.
 */
EbStatus eb_last_error_message(char **out);

/**
 * Frees a string allocated by this library. NULL is accepted.
 *
 * # Safety
 * `s` must have been returned by an eigenbound call and not freed before.
 */
void eb_string_free(char *s);

/**
 * Frees a graph handle. NULL is accepted.
 *
 * # Safety
 * `g` must have been returned by an `eb_graph_*` constructor and not freed
 * before.
 */
void eb_graph_free(EbGraph *g);

/**
 * Parses a one-byte-size graph6 string (n <= 62).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
EbStatus eb_graph_from_graph6(const char *text, EbGraph **out);

/**
 * Builds a graph from `num_edges` vertex pairs laid out as
 * `[i0, j0, i1, j1, ...]` (2 * num_edges entries).
 *
 * # Safety
 * `endpoints` must point to `2 * num_edges` readable u32 values (may be
 * NULL when `num_edges` is 0); `out` must be valid.
 */
EbStatus eb_graph_from_edge_list(uint32_t n,
                                 const uint32_t *endpoints,
                                 size_t num_edges,
                                 EbGraph **out);

/**
 * Disjoint union of k cliques of size m.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EbStatus eb_graph_cliques(uint32_t k, uint32_t m, EbGraph **out);

/**
 * The 12-vertex icosahedral graph in its fixed labeling.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EbStatus eb_graph_icosahedron(EbGraph **out);

/**
 * The Paley graph on 9 vertices in its fixed labeling.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EbStatus eb_graph_paley9(EbGraph **out);

/**
 * Complement graph.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
EbStatus eb_graph_complement(const EbGraph *g, EbGraph **out);

/**
 * Closed blowup: every vertex becomes a t-clique, every edge a join.
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
EbStatus eb_graph_closed_blowup(const EbGraph *g, uint32_t t, EbGraph **out);

/**
 * Number of vertices; 0 for a NULL handle.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
uint32_t eb_graph_order(const EbGraph *g);

/**
 * graph6 encoding of the graph (n <= 62).
 *
 * # Safety
 * `g` must be a live graph handle and `out` a valid pointer.
 */
EbStatus eb_graph_to_graph6(const EbGraph *g, char **out);

/**
 * Writes the adjacency spectrum in non-increasing order into `out`.
 * `len` must be at least the graph order.
 *
 * # Safety
 * `g` must be a live graph handle and `out` must point to `len` writable
 * doubles.
 */
EbStatus eb_graph_spectrum(const EbGraph *g, double *out, size_t len);

/**
 * Bound report for lambda_k of the graph as JSON; `source` is one of
 * "known_lambda", "nikiforov", "sivashankar".
 *
 * # Safety
 * `g` must be a live graph handle, `source` a NUL-terminated string, and
 * `out_json` a valid pointer.
 */
EbStatus eb_bound_check_json(const EbGraph *g, uint32_t k, const char *source, char **out_json);

/**
 * Entrywise certificate chain at rank k-1 as JSON; `passes` (optional)
 * receives the overall verdict.
 *
 * # Safety
 * `g` must be a live graph handle, `out_json` a valid pointer, and
 * `passes` NULL or valid.
 */
EbStatus eb_certify_json(const EbGraph *g, uint32_t k, char **out_json, bool *passes);

/**
 * Exact mu(r, N) by exhaustive sign-pattern enumeration, as JSON.
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
EbStatus eb_mu_exhaustive_json(uint32_t r, uint32_t n, char **out_json);

/**
 * Alternating-ascent estimate of mu(r, N), as JSON.
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
EbStatus eb_mu_alternating_json(uint32_t r,
                                uint32_t n,
                                uint32_t starts,
                                uint64_t seed,
                                char **out_json);

/**
 * Exhaustive M_k(n) scan (n <= 7), as JSON.
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
EbStatus eb_search_json(uint32_t n, uint32_t k, char **out_json);

/**
 * delta(r, N) = (r/N)(1 + sqrt((N-1)(N-r)/r)).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EbStatus eb_delta(uint32_t r, uint32_t n, double *out);

/**
 * Known value of (or upper bound on) the rank-r projection constant.
 * `exact` (optional) reports whether the value is exact.
 *
 * # Safety
 * `value` must be a valid pointer; `exact` NULL or valid.
 */
EbStatus eb_known_lambda(uint32_t r, double *value, bool *exact);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENBOUND_H */
