#ifndef PLANE_PACKING_H
#define PLANE_PACKING_H

/* Generated by cbindgen from the plane-packing-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Packing constructions selectable through [`pp_pack`].
 */
typedef enum PpMethod {
  PP_METHOD_DOUBLE_STAR = 0,
  PP_METHOD_TWO_TREES = 1,
  PP_METHOD_THREE_TREES = 2,
  PP_METHOD_TWO_PATHS = 3,
  PP_METHOD_WHEEL_PARTITION = 4,
  PP_METHOD_WHEEL_PATHS = 5,
  PP_METHOD_HIERARCHICAL = 6,
} PpMethod;

/**
 * Result of every fallible call.
 */
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  PP_STATUS_NULL_POINTER = 1,
  PP_STATUS_INVALID_ARGUMENT = 2,
  PP_STATUS_GENERAL_POSITION = 3,
  PP_STATUS_CONSTRUCTION_FAILED = 4,
  PP_STATUS_BUDGET_EXCEEDED = 5,
  PP_STATUS_PANIC = 6,
} PpStatus;

/**
 * Opaque packing.
 */
typedef struct PpPacking PpPacking;

/**
 * Opaque point set (explicit coordinates or a symbolic wheel).
 */
typedef struct PpPointSet PpPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent call on this thread: empty after success, the
 * failure reason otherwise, and the first witness after a `pp_verify` that
 * found a violation. Valid until the next call on the same thread.
 */
const char *pp_last_error_message(void);

/**
 * Builds a point set from `n` coordinate pairs, validating general position.
 *
 * # Safety
 * `xs` and `ys` must point to `n` readable values; `out` must be writable.
 */
enum PpStatus pp_pointset_new(const int64_t *xs,
                              const int64_t *ys,
                              size_t n,
                              struct PpPointSet **out);

/**
 * The regular wheel with `2n - 1` rim points and a hub.
 *
 * # Safety
 * `out` must be writable.
 */
enum PpStatus pp_pointset_wheel(size_t n, struct PpPointSet **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `ps` must be null or a live handle.
 */
size_t pp_pointset_len(const struct PpPointSet *ps);

/**
 * # Safety
 * `ps` must be null or a handle not yet freed.
 */
void pp_pointset_free(struct PpPointSet *ps);

/**
 * Runs a construction. `k` is the tree count for the double-star and
 * hierarchical methods (0 = default) and ignored otherwise.
 *
 * # Safety
 * `ps` must be a live handle and `out` writable.
 */
enum PpStatus pp_pack(const struct PpPointSet *ps,
                      enum PpMethod method,
                      size_t k,
                      struct PpPacking **out);

/**
 * Number of members, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pp_packing_member_count(const struct PpPacking *p);

/**
 * Number of edges of member `i`, or 0 if out of range.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pp_packing_member_edge_count(const struct PpPacking *p, size_t i);

/**
 * Copies the edges of member `i` into `buf` as `a0, b0, a1, b1, ...`.
 * `capacity` counts `size_t` slots and must be at least twice the edge count.
 *
 * # Safety
 * `p` must be a live handle and `buf` writable for `capacity` values.
 */
enum PpStatus pp_packing_member_edges(const struct PpPacking *p,
                                      size_t i,
                                      size_t *buf,
                                      size_t capacity);

/**
 * Runs the verifier; `out_ok` receives whether every required flag holds.
 *
 * # Safety
 * `p` must be a live handle and `out_ok` writable.
 */
enum PpStatus pp_verify(const struct PpPacking *p, bool require_partition, bool *out_ok);

/**
 * Serializes the packing in the library's JSON format. Release the string
 * with [`pp_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PpStatus pp_packing_to_json(const struct PpPacking *p, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void pp_string_free(char *s);

/**
 * Exact maximum number of edge-disjoint plane spanning trees (at most 16
 * vertices). On `BUDGET_EXCEEDED`, `out_count` holds a lower bound.
 *
 * # Safety
 * `ps` must be a live handle and `out_count` writable.
 */
enum PpStatus pp_oracle_max_trees(const struct PpPointSet *ps, uint64_t budget, size_t *out_count);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void pp_packing_free(struct PpPacking *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANE_PACKING_H */
