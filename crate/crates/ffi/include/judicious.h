#ifndef JUDICIOUS_H
#define JUDICIOUS_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JdStatus {
  JD_STATUS_OK = 0,
  JD_STATUS_NULL_POINTER = 1,
  JD_STATUS_INVALID_ARGUMENT = 2,
  JD_STATUS_PARSE = 3,
  /**
   * The pipeline or the verifier reported an error.
   */
  JD_STATUS_FAILED = 4,
  JD_STATUS_BUFFER_TOO_SMALL = 5,
  JD_STATUS_PANIC = 6,
} JdStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct JdHypergraph JdHypergraph;

/**
 * Opaque result of a partitioning run.
 */
typedef struct JdPartition JdPartition;

/**
 * Opaque certification report.
 */
typedef struct JdReport JdReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call on the same thread; never null.
 */
const char *jd_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *jd_version(void);

/**
 * Parses the `n m` / `u v w` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated UTF-8 string and `out` writable.
 */
enum JdStatus jd_hypergraph_parse(const char *text, struct JdHypergraph **out);

/**
 * Builds a hypergraph from `m` triples stored contiguously in `edges`.
 *
 * # Safety
 * `edges` must point to `3 * m` readable values (or be null when `m` is 0).
 */
enum JdStatus jd_hypergraph_new(size_t n,
                                const uint32_t *edges,
                                size_t m,
                                struct JdHypergraph **out);

/**
 * All triples on `n` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum JdStatus jd_hypergraph_complete(size_t n, struct JdHypergraph **out);

/**
 * `k` edges `{0, 1, v}`.
 *
 * # Safety
 * `out` must be writable.
 */
enum JdStatus jd_hypergraph_pair_core(size_t k, struct JdHypergraph **out);

/**
 * `m` distinct random triples on `n` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum JdStatus jd_hypergraph_random(size_t n, size_t m, uint64_t seed, struct JdHypergraph **out);

/**
 * Vertex and edge counts.
 *
 * # Safety
 * `h` must be a live handle; `n` and `m` writable.
 */
enum JdStatus jd_hypergraph_size(const struct JdHypergraph *h, size_t *n, size_t *m);

/**
 * # Safety
 * `h` must be null or a handle not yet freed.
 */
void jd_hypergraph_free(struct JdHypergraph *h);

/**
 * Runs the full pipeline. Pass `alpha <= 0` for the default 2/7.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum JdStatus jd_partition(const struct JdHypergraph *h,
                           double alpha,
                           uint64_t trials,
                           uint64_t seed,
                           struct JdPartition **out);

/**
 * Edges met by each part, written to `coverage[0..3]`.
 *
 * # Safety
 * `p` must be a live handle and `coverage` point to 3 writable values.
 */
enum JdStatus jd_partition_coverage(const struct JdPartition *p, uint64_t *coverage);

/**
 * Per-part probabilities for low vertices: `place[i]` of landing in part
 * `i` and `miss[i] = 1 - place[i]`. Either pointer may be null.
 *
 * # Safety
 * `p` must be a live handle; non-null `place` and `miss` must point to 3
 * writable values.
 */
enum JdStatus jd_partition_probabilities(const struct JdPartition *p, double *place, double *miss);

/**
 * Copies the part (0, 1 or 2) of every vertex into `parts`. With `len`
 * smaller than the vertex count nothing is written and the required length
 * is stored in `needed`.
 *
 * # Safety
 * `p` must be a live handle, `parts` must hold `len` values and `needed`
 * be writable.
 */
enum JdStatus jd_partition_assignment(const struct JdPartition *p,
                                      uint8_t *parts,
                                      size_t len,
                                      size_t *needed);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void jd_partition_free(struct JdPartition *p);

/**
 * Certifies every tabulated case. `epsilon_den == 0` keeps the tabulated
 * box sides; otherwise every case uses `epsilon_num / epsilon_den`.
 *
 * # Safety
 * `out` must be writable.
 */
enum JdStatus jd_verify(int64_t epsilon_num, int64_t epsilon_den, struct JdReport **out);

/**
 * Whether every computed case is certified, and the smallest bound.
 *
 * # Safety
 * `r` must be a live handle; `certified` and `min_bound` writable.
 */
enum JdStatus jd_report_summary(const struct JdReport *r,
                                bool *certified,
                                size_t *computed_cases,
                                double *min_bound);

/**
 * CSV rendering of the report; release with [`jd_string_free`].
 *
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum JdStatus jd_report_csv(const struct JdReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void jd_report_free(struct JdReport *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void jd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JUDICIOUS_H */
