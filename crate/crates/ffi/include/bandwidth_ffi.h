#ifndef BANDWIDTH_FFI_H
#define BANDWIDTH_FFI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Non-negative values are outcomes, negative values errors.
 */
typedef enum BwStatus {
  /**
   * Success; for a decision, "yes".
   */
  BW_STATUS_OK = 0,
  /**
   * The decision answer is "no".
   */
  BW_STATUS_NO = 1,
  /**
   * The budget ran out before an answer was proven.
   */
  BW_STATUS_UNKNOWN = 2,
  BW_STATUS_NULL_POINTER = -1,
  BW_STATUS_PARSE = -2,
  BW_STATUS_INVALID_ARGUMENT = -3,
  BW_STATUS_TOO_LARGE = -4,
  BW_STATUS_PANIC = -5,
} BwStatus;

/**
 * Opaque graph handle.
 */
typedef struct BwGraph BwGraph;

/**
 * Opaque solve result handle.
 */
typedef struct BwResult BwResult;

/**
 * Solver settings. Zero in `max_states` or `time_limit_ms` means no
 * override of the default.
 */
typedef struct BwOptions {
  size_t root;
  size_t workers;
  uint64_t max_states;
  uint64_t time_limit_ms;
} BwOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *bw_last_error(void);

struct BwOptions bw_options_default(void);

/**
 * Edgeless graph on `n` vertices.
 */
struct BwGraph *bw_graph_new(size_t n);

/**
 * Parses the edge-list text format into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum BwStatus bw_graph_parse(const char *text, struct BwGraph **out);

/**
 * Adds the edge `uv`; adding an existing edge is not an error.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
enum BwStatus bw_graph_add_edge(struct BwGraph *g, size_t u, size_t v);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
size_t bw_graph_vertex_count(const struct BwGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
size_t bw_graph_edge_count(const struct BwGraph *g);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void bw_graph_free(struct BwGraph *g);

/**
 * Exact bandwidth of `g`. `opts` may be null for defaults. Returns
 * `Unknown` (with a result holding the best ordering found) when the
 * budget ran out.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum BwStatus bw_solve(const struct BwGraph *g,
                       const struct BwOptions *opts,
                       struct BwResult **out);

/**
 * Decides whether `g` has an ordering of bandwidth at most `b`. Returns
 * `Ok` for yes, `No` or `Unknown`. On yes, the witness is stored in
 * `*witness` when `witness` is not null.
 *
 * # Safety
 * `g` must be a live handle; `witness` must be null or writable.
 */
enum BwStatus bw_decide(const struct BwGraph *g,
                        size_t b,
                        const struct BwOptions *opts,
                        struct BwResult **witness);

/**
 * Exact bandwidth by exhaustive search; refuses graphs over `limit`
 * vertices with `TooLarge`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum BwStatus bw_oracle(const struct BwGraph *g, size_t limit, struct BwResult **out);

/**
 * Bandwidth of the result's ordering.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t bw_result_bandwidth(const struct BwResult *r);

/**
 * Proven lower bound; equal to the bandwidth when optimal.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t bw_result_lower_bound(const struct BwResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
bool bw_result_is_optimal(const struct BwResult *r);

/**
 * Copies the 1-based position of each vertex into `buf` (up to `len`
 * entries) and returns the vertex count.
 *
 * # Safety
 * `r` must be a live result handle; `buf` must be null or hold `len`
 * writable entries.
 */
size_t bw_result_positions(const struct BwResult *r, size_t *buf, size_t len);

/**
 * The result as a JSON object; free with [`bw_string_free`]. Null on
 * failure.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
char *bw_result_to_json(const struct BwResult *r);

/**
 * # Safety
 * `r` must be null or a result handle not yet freed.
 */
void bw_result_free(struct BwResult *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void bw_string_free(char *s);

/**
 * Smallest branching base meeting every state-count constraint under the
 * weights `alpha`, `beta` in (0, 1].
 *
 * # Safety
 * `kappa` must be a writable pointer.
 */
enum BwStatus bw_kappa_for(double alpha, double beta, double *kappa);

/**
 * Searches the weight grid with default settings and writes the best
 * weights and base.
 *
 * # Safety
 * All three outputs must be writable pointers.
 */
enum BwStatus bw_optimize_weights(double *alpha, double *beta, double *kappa);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BANDWIDTH_FFI_H */
