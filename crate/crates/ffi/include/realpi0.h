#ifndef REALPI0_H
#define REALPI0_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum Rp0Status {
  RP0_STATUS_OK = 0,
  RP0_STATUS_NULL_POINTER = 1,
  /**
   * The input was rejected (bad parameters, invalid θ, malformed job).
   */
  RP0_STATUS_INVALID_INPUT = 2,
  /**
   * An index is out of range or a buffer is too short.
   */
  RP0_STATUS_OUT_OF_RANGE = 3,
  /**
   * A consistency check failed inside the library.
   */
  RP0_STATUS_INTERNAL = 4,
  /**
   * Coset enumeration disagreed with the Smith form computation.
   */
  RP0_STATUS_ORACLE_DISAGREEMENT = 5,
  RP0_STATUS_PANIC = 6,
} Rp0Status;

/**
 * A reductive group with a real form: root datum plus involution.
 */
typedef struct Rp0Group Rp0Group;

/**
 * π₀ and H¹ of an [`Rp0Group`].
 */
typedef struct Rp0Result Rp0Result;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *rp0_last_error(void);

/**
 * Split `GL(n)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum Rp0Status rp0_group_gl(size_t n, struct Rp0Group **out);

/**
 * `SO(p, q)`.
 *
 * # Safety
 * As [`rp0_group_gl`].
 */
enum Rp0Status rp0_group_so(size_t p, size_t q, struct Rp0Group **out);

/**
 * `PSO(p, q)`, `p + q` even.
 *
 * # Safety
 * As [`rp0_group_gl`].
 */
enum Rp0Status rp0_group_pso(size_t p, size_t q, struct Rp0Group **out);

/**
 * Adjoint `E₇` in the real form named by `form` ("EV", "EVI" or "EVII").
 *
 * # Safety
 * `form` must be a nul-terminated string; `out` as in [`rp0_group_gl`].
 */
enum Rp0Status rp0_group_e7(const char *form, struct Rp0Group **out);

/**
 * Builds a group from a JSON job document (preset or inline data).
 *
 * # Safety
 * `job_json` must be a nul-terminated string; `out` as in [`rp0_group_gl`].
 */
enum Rp0Status rp0_group_from_json(const char *job_json, struct Rp0Group **out);

/**
 * Rank of the cocharacter lattice.
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_group_rank(const struct Rp0Group *group, size_t *out);

/**
 * # Safety
 * `group` must be null or a handle not yet freed.
 */
void rp0_group_free(struct Rp0Group *group);

/**
 * Computes π₀ and H¹.
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_compute(const struct Rp0Group *group, struct Rp0Result **out);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void rp0_result_free(struct Rp0Result *result);

/**
 * Order of π₀G(ℝ).
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_pi0_order(const struct Rp0Result *result, uint64_t *out);

/**
 * Number of π₀ generators (the 2-rank).
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_pi0_rank(const struct Rp0Result *result, size_t *out);

/**
 * Copies generator `index` of π₀ into `buf`, which must hold `len` ≥ the
 * lattice rank entries.
 *
 * # Safety
 * `result` must be a live handle and `buf` valid for `len` writes.
 */
enum Rp0Status rp0_pi0_generator(const struct Rp0Result *result,
                                 size_t index,
                                 int64_t *buf,
                                 size_t len);

/**
 * Name of generator `index` (e.g. "e∨1"), or its coordinates when unnamed.
 * Free the string with [`rp0_string_free`].
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_pi0_generator_label(const struct Rp0Result *result, size_t index, char **out);

/**
 * Order of H¹(ℝ, iX∨/iQ∨).
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_h1_order(const struct Rp0Result *result, uint64_t *out);

/**
 * Whether π₀ maps injectively into H¹.
 *
 * # Safety
 * `result` must be a live handle and `out` writable.
 */
enum Rp0Status rp0_embedding_ok(const struct Rp0Result *result, bool *out);

/**
 * Recomputes π₀ and H¹ by coset enumeration up to `bound` cosets. `*agree`
 * is true when both were checked and matched, false when skipped; a
 * mismatch returns [`Rp0Status::OracleDisagreement`].
 *
 * # Safety
 * `result` must be a live handle and `agree` writable.
 */
enum Rp0Status rp0_oracle_check(const struct Rp0Result *result, size_t bound, bool *agree);

/**
 * Runs a JSON job and returns the JSON report. `oracle_bound` of 0 means
 * the default. Free the string with [`rp0_string_free`].
 *
 * # Safety
 * `job_json` must be a nul-terminated string and `out` writable.
 */
enum Rp0Status rp0_report_json(const char *job_json, size_t oracle_bound, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void rp0_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REALPI0_H */
