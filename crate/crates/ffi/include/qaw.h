#ifndef QAW_H
#define QAW_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum QawStatus {
  QAW_STATUS_OK = 0,
  QAW_STATUS_NULL_POINTER = 1,
  QAW_STATUS_INVALID_ARGUMENT = 2,
  QAW_STATUS_PARSE = 3,
  QAW_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * Arithmetic failure such as a vanishing denominator.
   */
  QAW_STATUS_DOMAIN = 5,
  QAW_STATUS_PANIC = 6,
} QawStatus;

/**
 * Output syntax for [`qaw_poly_render`].
 */
typedef enum QawFormat {
  QAW_FORMAT_TEXT = 0,
  QAW_FORMAT_LATEX = 1,
} QawFormat;

/**
 * A family of monic orthogonal polynomials.
 */
typedef struct QawFamily QawFamily;

/**
 * A polynomial in `x` with coefficients in `Q(t, u)`, `t = q^(1/4)`, `u = q^(n/2)`.
 */
typedef struct QawPoly QawPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static NUL-terminated string.
 */
const char *qaw_version(void);

/**
 * Copies the last failure message of this thread into `buf`.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `len` may be null.
 */
enum QawStatus qaw_last_error_message(char *buf, size_t cap, size_t *len);

/**
 * The closed-form family with `B_n`, `C_n` at `(1, -1, q^(1/4) | q^(1/2))`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum QawStatus qaw_family_counterexample(struct QawFamily **out);

/**
 * Dual q-Hahn family; parameters are scalar expressions in `t` such as `"t^2"`.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be valid for a write.
 */
enum QawStatus qaw_family_dual_qhahn(const char *a,
                                     const char *b,
                                     const char *c,
                                     const char *base,
                                     struct QawFamily **out);

/**
 * # Safety
 * `fam` must be null or come from a `qaw_family_*` constructor, freed once.
 */
void qaw_family_free(struct QawFamily *fam);

/**
 * The degree-`n` member of `fam`.
 *
 * # Safety
 * `fam` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_family_poly(const struct QawFamily *fam, size_t n, struct QawPoly **out);

/**
 * Parses text such as `"(t^2 - 1) x^2 + u x - 3/4"`.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_parse(const char *text, struct QawPoly **out);

/**
 * # Safety
 * `poly` must be null or a handle returned by this library, freed once.
 */
void qaw_poly_free(struct QawPoly *poly);

/**
 * Degree, or -1 for the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_degree(const struct QawPoly *poly, int64_t *out);

/**
 * Renders `poly` into `buf`. With `cap` too small, returns
 * `QAW_STATUS_BUFFER_TOO_SMALL` and still sets `len`.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes; `len` may be null.
 */
enum QawStatus qaw_poly_render(const struct QawPoly *poly,
                               enum QawFormat format,
                               char *buf,
                               size_t cap,
                               size_t *len);

/**
 * Value at real `x` for `0 < q`. Fails with `QAW_STATUS_INVALID_ARGUMENT`
 * when a coefficient depends on `u`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_eval(const struct QawPoly *poly, double q, double x, double *out);

/**
 * Substitutes `u = q^(n/2)`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_instantiate(const struct QawPoly *poly, int64_t n, struct QawPoly **out);

/**
 * Divided-difference operator `D_q`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_dq(const struct QawPoly *poly, struct QawPoly **out);

/**
 * Averaging operator `S_q`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum QawStatus qaw_poly_sq(const struct QawPoly *poly, struct QawPoly **out);

/**
 * Exact check of both structure relations for `n <= nmax`.
 *
 * # Safety
 * `passed` must be valid for a write.
 */
enum QawStatus qaw_verify_proposition(size_t nmax, bool *passed);

/**
 * Symbolic certificates of the inductive proof at the default samples.
 *
 * # Safety
 * `passed` must be valid for a write.
 */
enum QawStatus qaw_verify_proof(bool *passed);

/**
 * Floating-point cross-check on the default grid. `max_rel_dev` may be null.
 *
 * # Safety
 * `passed` must be valid for a write; `max_rel_dev` null or valid.
 */
enum QawStatus qaw_verify_numeric(size_t nmax, double *max_rel_dev, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QAW_H */
