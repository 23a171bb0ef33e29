#ifndef SPARSE_MAXCUT_H
#define SPARSE_MAXCUT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmcStatus {
  SMC_STATUS_OK = 0,
  SMC_STATUS_NULL_POINTER = 1,
  /**
   * Invalid argument.
   */
  SMC_STATUS_DOMAIN = 2,
  /**
   * Bracketing, convergence or divergence failure in a solver.
   */
  SMC_STATUS_SOLVER = 3,
  /**
   * Size or budget limit exceeded.
   */
  SMC_STATUS_RESOURCE = 4,
} SmcStatus;

/**
 * Opaque multigraph handle.
 */
typedef struct SmcGraph SmcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *smc_last_error(void);

/**
 * Root `x_u` of the first-moment exponent and the tilt `theta_u` there.
 *
 * # Safety
 * `x_u` and `theta_u` must each be null or valid for writing one `double`.
 */
enum SmcStatus smc_upper_bound(double tol, double *x_u, double *theta_u);

/**
 * Lower-bound constant `x_l` by bisection to `tol_x`. Takes tens of seconds.
 *
 * # Safety
 * `x_l` must be valid for writing one `double`.
 */
enum SmcStatus smc_lower_bound(double tol_x, double *x_l);

/**
 * First-moment exponent `w(x)`.
 *
 * # Safety
 * `w` must be valid for writing one `double`.
 */
enum SmcStatus smc_first_moment_w(double x, double *w);

/**
 * Second-moment exponent `W(x, beta)`.
 *
 * # Safety
 * `w_big` must be valid for writing one `double`.
 */
enum SmcStatus smc_second_moment_w(double x, double beta, double *w_big);

/**
 * Exact `K(n, mu1, mu2)` as a newly allocated fraction string such as
 * `"3/4"`, released with [`smc_string_free`].
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum SmcStatus smc_k2_exact(size_t n, size_t mu1, size_t mu2, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void smc_string_free(char *s);

/**
 * Configuration-model multigraph with `n` vertices and `m` edges.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum SmcStatus smc_graph_generate(size_t n, size_t m, uint64_t seed, struct SmcGraph **out);

/**
 * Graph from `m` edges given as `2m` consecutive endpoints.
 *
 * # Safety
 * `endpoints` must point to `2 * m` readable `size_t` values (or be null when
 * `m == 0`); `out` must be valid for writing one pointer.
 */
enum SmcStatus smc_graph_from_edges(size_t n,
                                    const size_t *endpoints,
                                    size_t m,
                                    struct SmcGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle from this library that has not been freed.
 */
void smc_graph_free(struct SmcGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t smc_graph_vertex_count(const struct SmcGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t smc_graph_edge_count(const struct SmcGraph *g);

/**
 * Maximum cut value by exhaustive search (at most 20 vertices).
 *
 * # Safety
 * `g` must be a live handle; `value` must be valid for writing one `size_t`.
 */
enum SmcStatus smc_graph_maxcut(const struct SmcGraph *g, size_t *value);

/**
 * Local-flip search from the all-zero cut. Writes the final cut value and,
 * if `sides` is non-null, one 0/1 byte per vertex.
 *
 * # Safety
 * `g` must be a live handle; `value` must be valid for writing one `size_t`;
 * `sides` must be null or valid for writing `smc_graph_vertex_count(g)` bytes.
 */
enum SmcStatus smc_graph_local_search(const struct SmcGraph *g,
                                      uint64_t seed,
                                      size_t *value,
                                      uint8_t *sides);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPARSE_MAXCUT_H */
