#ifndef BESSEL_RADII_H
#define BESSEL_RADII_H

#include <stddef.h>
#include <stdint.h>

#define BR_FAMILY_F 0

#define BR_FAMILY_G 1

#define BR_FAMILY_H 2

#define BR_ZEROS_J 0

#define BR_ZEROS_JPRIME 1

#define BR_ZEROS_DINI_G 2

#define BR_ZEROS_DINI_H 3

typedef enum BrStatus {
  BR_STATUS_OK = 0,
  BR_STATUS_NULL_POINTER = 1,
  BR_STATUS_INVALID_ORDER = 2,
  BR_STATUS_INVALID_PARAMETER = 3,
  BR_STATUS_OUT_OF_INTERVAL = 4,
  BR_STATUS_DOMAIN_CAP_EXCEEDED = 5,
  BR_STATUS_NON_CONVERGENCE = 6,
  BR_STATUS_ZERO_ARGUMENT = 7,
  BR_STATUS_SCAN_EXHAUSTED = 8,
  BR_STATUS_NEAR_POLE = 9,
  BR_STATUS_BRACKET_FAILURE = 10,
  BR_STATUS_PRECONDITION_VIOLATED = 11,
  BR_STATUS_BUFFER_TOO_SMALL = 12,
  BR_STATUS_PANIC = 13,
} BrStatus;

/**
 * Opaque evaluator handle.
 */
typedef struct BrEvaluator BrEvaluator;

typedef struct BrRadius {
  double radius;
  double bracket_lo;
  double bracket_hi;
  double residual;
  double zero_sum_residual;
  double cap;
  size_t iterations;
} BrRadius;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *br_status_message(enum BrStatus status);

/**
 * Creates an evaluator for `family` (one of `BR_FAMILY_*`) and order `nu`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum BrStatus br_evaluator_new(uint32_t family_code, double nu, struct BrEvaluator **out);

/**
 * # Safety
 * `ev` must be null or a handle from [`br_evaluator_new`] not yet freed.
 */
void br_evaluator_free(struct BrEvaluator *ev);

/**
 * Writes `j'_{nu,1}`, `alpha_{nu,1}` or `beta_{nu,1}^2`.
 *
 * # Safety
 * `ev` must be a live handle and `out` writable.
 */
enum BrStatus br_evaluator_cap(const struct BrEvaluator *ev, double *out);

/**
 * Ratio-form value of the functional at `0 < r < cap`.
 *
 * # Safety
 * `ev` must be a live handle and `out` writable.
 */
enum BrStatus br_eval(const struct BrEvaluator *ev, double alpha, double r, double *out);

/**
 * Zero-sum value over `terms` zeros with the tail bound; `half_width` may be null.
 *
 * # Safety
 * `ev` must be a live handle, `out` writable, `half_width` null or writable.
 */
enum BrStatus br_eval_zero_sum(const struct BrEvaluator *ev,
                               double alpha,
                               double r,
                               size_t terms,
                               double *out,
                               double *half_width);

/**
 * Radius of alpha-convexity of order beta.
 *
 * # Safety
 * `ev` must be a live handle and `out` writable.
 */
enum BrStatus br_radius(const struct BrEvaluator *ev,
                        double alpha,
                        double beta,
                        double tol,
                        struct BrRadius *out);

/**
 * First `count` positive zeros of the function named by `kind` (`BR_ZEROS_*`)
 * into `buf[0..count]`.
 *
 * # Safety
 * `buf` must point to `len` writable doubles.
 */
enum BrStatus br_zeros(uint32_t kind, double nu, size_t count, double tol, double *buf, size_t len);

/**
 * `J_nu(re + i im)` on the principal branch.
 *
 * # Safety
 * `out_re` and `out_im` must be writable.
 */
enum BrStatus br_bessel_j(double nu, double re, double im, double *out_re, double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BESSEL_RADII_H */
