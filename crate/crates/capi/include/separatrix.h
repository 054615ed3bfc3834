#ifndef SEPARATRIX_H
#define SEPARATRIX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define SX_OK 0

/**
 * a required pointer argument was null
 */
#define SX_ERR_NULL 1

/**
 * the frequency spec string could not be parsed
 */
#define SX_ERR_INVALID_SPEC 2

/**
 * the catalog is indeterminate (e.g. tie in the minimal limit numerator)
 */
#define SX_ERR_INDETERMINATE 3

/**
 * a numeric argument was outside its domain
 */
#define SX_ERR_DOMAIN 4

/**
 * the queried quantity exists only for the cubic case
 */
#define SX_ERR_NOT_CUBIC 5

/**
 * index out of range
 */
#define SX_ERR_RANGE 6

/**
 * internal invariant violation
 */
#define SX_ERR_INTERNAL 7

/**
 * Opaque analysis handle: one frequency vector with its certified resonance
 * catalog and exponent engine.
 */
typedef struct SxHandle SxHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a handle for a frequency spec ("golden", "silver", "cubic-golden",
 * "omega:a[,b,...]" or a comma-separated period word) and model parameters
 * rho > 0 (Fourier decay width) and p (exponent of mu = eps^p).
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string; `out` must be valid for a
 * single pointer write.
 */
int sx_open(const char *spec, double rho, double p, struct SxHandle **out);

/**
 * Release a handle created by `sx_open`. Passing NULL is a no-op.
 *
 * # Safety
 * `h` must be NULL or a pointer returned by `sx_open` not yet closed.
 */
void sx_close(struct SxHandle *h);

/**
 * Field degree: 2 (quadratic) or 3 (cubic).
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_degree(const struct SxHandle *h, uint32_t *out);

/**
 * Koch eigenvalue lambda.
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_lambda(const struct SxHandle *h, double *out);

/**
 * Minimal limit numerator gamma* of the primary resonant sequence.
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_gamma_star(const struct SxHandle *h, double *out);

/**
 * Separation constant B0 (quadratic) or B0- (cubic).
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_b0(const struct SxHandle *h, double *out);

/**
 * Oscillation amplitude delta (cubic only).
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_delta(const struct SxHandle *h, double *out);

/**
 * Lower and upper exponent bounds: (A0, A1) quadratic, (A0-, A1+) cubic.
 *
 * # Safety
 * `h` must be a live handle; `a0`/`a1` valid for one write each.
 */
int sx_bounds(const struct SxHandle *h, double *a0, double *a1);

/**
 * Certified separation condition B0 >= A1 (resp. B0- >= A1+): writes 1 or 0.
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_separation_check(const struct SxHandle *h, int *out);

/**
 * Number of primitives in the catalog.
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_primitive_count(const struct SxHandle *h, uintptr_t *out);

/**
 * Limit numerators (gamma-, gamma*, gamma+) of the idx-th primitive, sorted
 * ascending by gamma*. For the quadratic case all three coincide.
 *
 * # Safety
 * `h` must be a live handle; the three out-pointers valid for one write each.
 */
int sx_primitive(const struct SxHandle *h,
                 uintptr_t idx,
                 double *gamma_minus,
                 double *gamma_star,
                 double *gamma_plus);

/**
 * h1(eps) and the dominant index N(eps).
 *
 * # Safety
 * `h` must be a live handle; `out`/`n_out` valid for one write each.
 */
int sx_h1(const struct SxHandle *h, double eps, double *out, uint32_t *n_out);

/**
 * h2(eps): second-smallest exponent function over all non-dominant harmonics.
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_h2(const struct SxHandle *h, double eps, double *out);

/**
 * ln of the maximal-splitting envelope eps^{p - 1/l} exp(-C0 h1 / eps^{1/2l}).
 *
 * # Safety
 * `h` must be a live handle; `out` valid for one write.
 */
int sx_ln_envelope(const struct SxHandle *h, double eps, double *out);

/**
 * Static description of an error code; never NULL.
 */
const char *sx_error_message(int code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEPARATRIX_H */
