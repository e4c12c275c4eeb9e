#ifndef CSBM_H
#define CSBM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CSBM_OK 0

/**
 * A required pointer argument was null.
 */
#define CSBM_ERR_NULL_POINTER -1

/**
 * A Rust panic was caught at the boundary.
 */
#define CSBM_ERR_PANIC -2

/**
 * A string argument was not valid UTF-8.
 */
#define CSBM_ERR_INVALID_UTF8 -3

/**
 * An output buffer was too small.
 */
#define CSBM_ERR_BUFFER_TOO_SMALL -4

/**
 * Unknown algorithm identifier.
 */
#define CSBM_ERR_UNKNOWN_ALGO -5

#define CSBM_ALGO_SPEC1 0

#define CSBM_ALGO_SPEC1Y 1

#define CSBM_ALGO_SPEC2 2

#define CSBM_ALGO_SPEC2K 3

#define CSBM_ALGO_GENIE 4

/**
 * Opaque censored graph with its ground-truth labels and reveal intensity.
 */
typedef struct CsbmGraph CsbmGraph;

/**
 * Opaque model parameters.
 */
typedef struct CsbmParams CsbmParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *csbm_last_error_message(void);

/**
 * Creates parameters from `k`, the prior `rho[k]`, the row-major
 * connectivity matrix `p[k*k]` and the reveal intensity `t`.
 *
 * # Safety
 * `rho` and `p` must point to `k` and `k*k` readable doubles; `out` must be writable.
 */
int32_t csbm_params_new(size_t k, const double *rho, const double *p, double t, CsbmParams **out);

/**
 * # Safety
 * `params` must come from [`csbm_params_new`] and not be used afterwards.
 */
void csbm_params_free(CsbmParams *params);

/**
 * Critical threshold `t_c` and the 1-based pair attaining it.
 *
 * # Safety
 * `params` must be a live handle; output pointers must be writable.
 */
int32_t csbm_critical_threshold(const CsbmParams *params,
                                double *t_c,
                                size_t *pair_i,
                                size_t *pair_j);

/**
 * Maximum `delta_plus` and maximiser `xi_star` of the Chernoff–Hellinger
 * function of two positive vectors of length `len`.
 *
 * # Safety
 * `mu` and `nu` must point to `len` readable doubles; outputs must be writable.
 */
int32_t csbm_ch_divergence(const double *mu,
                           const double *nu,
                           size_t len,
                           double *delta_plus,
                           double *xi_star);

/**
 * Samples labels and a graph on `n` vertices from `seed`.
 *
 * # Safety
 * `params` must be a live handle; `out` must be writable.
 */
int32_t csbm_graph_sample(const CsbmParams *params,
                          size_t n,
                          uint64_t seed,
                          bool enforce_concentration,
                          CsbmGraph **out);

/**
 * Reads a graph file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
int32_t csbm_graph_read(const char *path, CsbmGraph **out);

/**
 * Writes a graph file.
 *
 * # Safety
 * `graph` must be a live handle; `path` a NUL-terminated string.
 */
int32_t csbm_graph_write(const CsbmGraph *graph, const char *path);

/**
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void csbm_graph_free(CsbmGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t csbm_graph_num_vertices(const CsbmGraph *graph);

/**
 * Number of revealed pairs, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t csbm_graph_num_revealed(const CsbmGraph *graph);

/**
 * Copies the ground-truth labels (1-based) into `out[len]`, `len >= n`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must have room for `len` values.
 */
int32_t csbm_graph_labels(const CsbmGraph *graph, uint32_t *out, size_t len);

/**
 * Runs a recovery algorithm (`CSBM_ALGO_*`) on `graph` with the model of
 * `params` at the graph's reveal intensity, writing 1-based labels to
 * `out[len]`. `spec1y` uses `y1`. The two-matrix algorithms use `(y1, y2)`
 * when both are positive and otherwise draw a pair from `seed`.
 *
 * # Safety
 * Handles must be live; `out` must have room for `len` values.
 */
int32_t csbm_recover(const CsbmGraph *graph,
                     const CsbmParams *params,
                     int32_t algo,
                     double y1,
                     double y2,
                     uint64_t seed,
                     uint32_t *out,
                     size_t len);

/**
 * Misclassified vertices between two 1-based labelings of length `n` over
 * `k` communities, minimised over label permutations.
 *
 * # Safety
 * `a` and `b` must point to `n` readable values; `misclassified` must be writable.
 */
int32_t csbm_exact_recovery(const uint32_t *a,
                            const uint32_t *b,
                            size_t n,
                            size_t k,
                            size_t *misclassified);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CSBM_H */
