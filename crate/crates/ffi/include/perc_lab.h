#ifndef PERC_LAB_H
#define PERC_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_INVALID_INPUT = 1,
  PL_STATUS_PRECONDITION = 2,
  PL_STATUS_BUDGET = 3,
  PL_STATUS_PARSE = 4,
  PL_STATUS_IO = 5,
  PL_STATUS_NULL_POINTER = 6,
  PL_STATUS_PANIC = 7,
} PlStatus;

/**
 * Opaque graph handle.
 */
typedef struct PlGraph PlGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *pl_version(void);

/**
 * Copies the last error message of this thread into `buf` (truncated, always
 * NUL-terminated when `len > 0`). Returns the full message length, 0 if none.
 *
 * # Safety
 * `buf` must point to `len` writable bytes or be null with `len == 0`.
 */
uintptr_t pl_last_error(char *buf, uintptr_t len);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pl_string_free(char *s);

/**
 * Hypercubic box of side `side` in dimension `dim`.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum PlStatus pl_graph_zd_box(uintptr_t dim, uintptr_t side, struct PlGraph **out);

/**
 * Graph from edge-list text (same format as the CLI's `file` graphs).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` a valid pointer to a handle slot.
 */
enum PlStatus pl_graph_from_edge_list(const char *text, struct PlGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
void pl_graph_free(struct PlGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
uintptr_t pl_graph_vertex_count(const struct PlGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
uintptr_t pl_graph_edge_count(const struct PlGraph *g);

/**
 * Volume and radius tails of the origin cluster truncated at `radius`. Writes
 * `vgrid_len` volume estimates and `rgrid_len` radius estimates.
 *
 * # Safety
 * Grids and outputs must point to arrays of the given lengths.
 */
enum PlStatus pl_tail_curves(const struct PlGraph *g,
                             double p,
                             const uint64_t *vgrid,
                             uintptr_t vgrid_len,
                             const uint64_t *rgrid,
                             uintptr_t rgrid_len,
                             uint32_t radius,
                             uint64_t samples,
                             uint64_t seed,
                             double *out_volume,
                             double *out_radius);

/**
 * Exact merge probability and its bound `(1 - ε)^t` on the built-in eight-edge graph.
 *
 * # Safety
 * Outputs must be valid pointers.
 */
enum PlStatus pl_exact_merge_eight_edge(double p,
                                        double q,
                                        uintptr_t t,
                                        double *out_probability,
                                        double *out_bound);

/**
 * `v_0..=v_{n_max}` for `Φ(t) = coef · t^exponent`; `out` holds `n_max + 1` values.
 *
 * # Safety
 * `out` must point to `n_max + 1` writable doubles.
 */
enum PlStatus pl_solve_v_n_power(uintptr_t size_s,
                                 double c,
                                 double coef,
                                 double exponent,
                                 uintptr_t n_max,
                                 uintptr_t degree,
                                 double *out);

/**
 * Frequency of `B_k ↔ B_k(n)` inside `B_{Cn}` in `ℤ^d`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PlStatus pl_block_connection_prob(double p,
                                       uint32_t k,
                                       uint32_t n,
                                       uint32_t c,
                                       uintptr_t d,
                                       uint64_t samples,
                                       uint64_t seed,
                                       double *out);

/**
 * Runs a TOML experiment config, writing outputs to `out_dir`. On success
 * `*out_manifest` receives the manifest as JSON (free with [`pl_string_free`]).
 *
 * # Safety
 * `config` and `out_dir` must be NUL-terminated strings; `out_manifest` a valid pointer.
 */
enum PlStatus pl_run_config(const char *config,
                            const char *out_dir,
                            uint64_t seed,
                            char **out_manifest);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERC_LAB_H */
