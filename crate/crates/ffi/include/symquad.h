#ifndef SYMQUAD_H
#define SYMQUAD_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SqFano {
  SQ_FANO_FANO = 0,
  SQ_FANO_WEAK_FANO = 1,
  SQ_FANO_NOT_AMPLE = 2,
} SqFano;

typedef enum SqStatus {
  SQ_STATUS_OK = 0,
  SQ_STATUS_INVALID_ARGUMENT = 1,
  SQ_STATUS_OUT_OF_RANGE = 2,
  SQ_STATUS_DIMENSION_MISMATCH = 3,
  SQ_STATUS_PARSE = 4,
  SQ_STATUS_PRECONDITION = 5,
  SQ_STATUS_UNSUPPORTED = 6,
  SQ_STATUS_INVARIANT = 7,
  SQ_STATUS_NULL_POINTER = 8,
  SQ_STATUS_PANIC = 9,
} SqStatus;

/**
 * Cohomology ring of a Lagrangian Grassmannian.
 */
typedef struct SqRing SqRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *sq_last_error(void);

void sq_string_free(char *s);

/**
 * Degree of the `h`-th secant variety of the second Veronese of `P^n`.
 */
enum SqStatus sq_secant_degree(size_t n, size_t h, char **out);

/**
 * Stratum label of the symmetric `2r x 2r` matrix given row-major as
 * `4 r^2` rational strings.
 */
enum SqStatus sq_classify_point(size_t r, const char *const *entries, size_t len, char **out);

/**
 * `(aH - bE)^n` on the blow-up of an `n`-dimensional variety with
 * `H^n = h_top` along a center whose normal bundle has Segre classes
 * `segre[0..len]` (in powers of `h`, `H|_Z = m h`).
 */
enum SqStatus sq_blowup_power(int64_t a,
                              int64_t b,
                              size_t n,
                              int64_t h_top,
                              int64_t m,
                              const char *const *segre,
                              size_t len,
                              char **out);

/**
 * Value of a named enumerative preset: "nine-lines", "chasles" or
 * "six-lines-symplectic".
 */
enum SqStatus sq_preset_value(const char *name, char **out);

enum SqStatus sq_symplectic_tangency_number(int64_t *out);

enum SqStatus sq_fano_type(size_t r, enum SqFano *out);

/**
 * Builds and verifies the ring for `LG(r, 2r)`. Free with `sq_ring_free`.
 */
enum SqStatus sq_ring_new(size_t r, struct SqRing **out);

void sq_ring_free(struct SqRing *ring);

enum SqStatus sq_ring_graded_dimension(const struct SqRing *ring, size_t degree, size_t *out);

/**
 * Expands an expression such as "s1*s1*s2 - s[2,1]" in the strict
 * partition basis.
 */
enum SqStatus sq_ring_evaluate(const struct SqRing *ring, const char *expr, char **out);

/**
 * Degree of a top-weight expression.
 */
enum SqStatus sq_ring_integrate(const struct SqRing *ring, const char *expr, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SYMQUAD_H */
