#ifndef RSDESIGN_H
#define RSDESIGN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum RsdStatus {
  RSD_STATUS_OK = 0,
  /**
   * The array is not an `(r,s)`-design, or the spectral check says no.
   */
  RSD_STATUS_NOT_A_DESIGN = 1,
  RSD_STATUS_INVALID_ARGUMENT = 2,
  RSD_STATUS_PARSE_ERROR = 3,
  /**
   * A mathematical precondition failed (for example `r > m`).
   */
  RSD_STATUS_PRECONDITION = 4,
  RSD_STATUS_TOO_LARGE = 5,
  /**
   * Search exhausted without a design.
   */
  RSD_STATUS_NOT_FOUND = 6,
  RSD_STATUS_BUDGET_EXCEEDED = 7,
  RSD_STATUS_IO_ERROR = 8,
  RSD_STATUS_NULL_POINTER = 9,
  RSD_STATUS_INTERNAL = 10,
} RsdStatus;

/**
 * An owned design array.
 */
typedef struct RsdDesign RsdDesign;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *rsd_last_error_message(void);

/**
 * Parses a design from text in the `n w q` header format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RsdStatus rsd_design_parse(const char *text, struct RsdDesign **out);

/**
 * Reads a design file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RsdStatus rsd_design_load(const char *path, struct RsdDesign **out);

/**
 * One of the built-in example designs, `"fig1"` or `"fig2"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RsdStatus rsd_design_fixture(const char *name, struct RsdDesign **out);

/**
 * Releases a design. NULL is ignored.
 *
 * # Safety
 * `design` must come from this library and not be used afterwards.
 */
void rsd_design_free(struct RsdDesign *design);

/**
 * Writes `n`, `w`, `q` and the row count. Any output pointer may be NULL.
 *
 * # Safety
 * Non-NULL pointers must be valid for writes.
 */
enum RsdStatus rsd_design_dims(const struct RsdDesign *design,
                               size_t *n,
                               size_t *w,
                               size_t *q,
                               size_t *rows);

/**
 * Symbol at 0-based `row` and `col`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RsdStatus rsd_design_get(const struct RsdDesign *design, size_t row, size_t col, uint8_t *out);

/**
 * `Ok` with the index in `lambda` when the array is an `(r,s)`-design,
 * `NotADesign` otherwise.
 *
 * # Safety
 * `lambda` may be NULL; otherwise it must be valid for writes.
 */
enum RsdStatus rsd_design_verify(const struct RsdDesign *design,
                                 size_t r,
                                 size_t s,
                                 uint64_t *lambda);

/**
 * Exact character-sum check; `Precondition` when `r > m`.
 *
 * # Safety
 * `design` must be a valid handle.
 */
enum RsdStatus rsd_design_spectral(const struct RsdDesign *design, size_t r, size_t s);

/**
 * The design in file format, to be released with `rsd_string_free`; NULL on failure.
 *
 * # Safety
 * `design` must be a valid handle.
 */
char *rsd_design_to_string(const struct RsdDesign *design);

/**
 * Releases a string from `rsd_design_to_string`. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rsd_string_free(char *s);

/**
 * Multiplicity `m_ij` of `J_q(w,n)`; `TooLarge` if it exceeds 64 bits.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RsdStatus rsd_multiplicity(size_t n, size_t w, size_t q, size_t i, size_t j, uint64_t *out);

/**
 * Natural bound `(q-1)^s C(n,r)/C(w,r)` as a reduced fraction, and the
 * Fisher-type bound in `fisher` (0 when `r > m` or `(r,s)` is not in `L`).
 *
 * # Safety
 * Output pointers must be valid for writes.
 */
enum RsdStatus rsd_bounds(size_t n,
                          size_t w,
                          size_t q,
                          size_t r,
                          size_t s,
                          uint64_t *natural_num,
                          uint64_t *natural_den,
                          uint64_t *fisher);

/**
 * A Steiner triple system on `n` points with the trivial array over
 * `q-1` symbols placed on each block: a `(2,1)`-design with index 1.
 *
 * # Safety
 * `out` must be a valid pointer; `lambda` may be NULL.
 */
enum RsdStatus rsd_construct_sts_trivial(size_t n,
                                         size_t q,
                                         struct RsdDesign **out,
                                         uint64_t *lambda);

/**
 * Exact-cover search for an index-1 `(r,s)`-design. `Ok` with the design in
 * `out`, `NotFound` when the space is exhausted, `BudgetExceeded` when the
 * node budget runs out, `Precondition` for a non-integral natural bound.
 *
 * # Safety
 * `out` must be a valid pointer; `nodes` may be NULL.
 */
enum RsdStatus rsd_search(size_t n,
                          size_t w,
                          size_t q,
                          size_t r,
                          size_t s,
                          uint64_t budget,
                          size_t jobs,
                          struct RsdDesign **out,
                          uint64_t *nodes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSDESIGN_H */
