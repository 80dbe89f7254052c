#ifndef BANDSPEC_H
#define BANDSPEC_H

/* Generated by cbindgen from the bandspec-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API function.
 */
typedef enum {
  BS_STATUS_OK = 0,
  BS_STATUS_NULL_POINTER = 1,
  BS_STATUS_INVALID_ARGUMENT = 2,
  BS_STATUS_DEGENERATE = 3,
  BS_STATUS_TOLERANCE_EXCEEDED = 4,
  BS_STATUS_POLE_PROXIMITY = 5,
  BS_STATUS_SEARCH_EXHAUSTED = 6,
  BS_STATUS_NO_CONVERGENCE = 7,
  BS_STATUS_UNKNOWN = 8,
} BsStatus;

/**
 * Opaque matrix handle: a tridiagonal or banded (2,3) operator.
 */
typedef struct BsMatrix BsMatrix;

/**
 * Opaque truncation spectrum handle for the banded (2,3) case.
 */
typedef struct BsSpectrum BsSpectrum;

/**
 * Crate version as a static NUL-terminated string.
 */
const char *bs_version(void);

/**
 * Copies the most recent error message on this thread into `buf`
 * (NUL-terminated, truncated to `cap`). Returns the full message length.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes (or be NULL with cap 0).
 */
uintptr_t bs_last_error(char *buf, uintptr_t cap);

/**
 * Creates a tridiagonal matrix from its diagonal (length n_max+1) and
 * positive subdiagonal (length n_max); the superdiagonal is fixed at one.
 *
 * # Safety
 * `diag` and `sub` must point to arrays of the stated lengths; `out` must
 * be a valid destination pointer. The handle must be released with
 * [`bs_matrix_free`].
 */
BsStatus bs_matrix_jacobi(const double *diag, const double *sub, uintptr_t n_max, BsMatrix **out);

/**
 * Creates a banded matrix with two superdiagonals and three subdiagonals
 * from six diagonal arrays ordered by offset -3, -2, -1, 0, +1, +2 with
 * lengths n_max+1-|offset|.
 *
 * # Safety
 * All six diagonal pointers must reference arrays of the stated lengths;
 * `out` must be valid. Release with [`bs_matrix_free`].
 */
BsStatus bs_matrix_banded23(const double *d_m3,
                            const double *d_m2,
                            const double *d_m1,
                            const double *d_0,
                            const double *d_p1,
                            const double *d_p2,
                            uintptr_t n_max,
                            BsMatrix **out);

/**
 * Creates the banded (2,3) matrix assembled from positive bidiagonal
 * factors L1 L2 L3 Δ U2 U1 (subdiagonal and superdiagonal arrays of
 * length n_max, diagonal of length n_max+1).
 *
 * # Safety
 * All factor pointers must reference arrays of the stated lengths; `out`
 * must be valid. Release with [`bs_matrix_free`].
 */
BsStatus bs_matrix_from_factors(const double *l1,
                                const double *l2,
                                const double *l3,
                                const double *delta,
                                const double *u2,
                                const double *u1,
                                uintptr_t n_max,
                                BsMatrix **out);

/**
 * Shifts the main diagonal by `s`, producing a new handle.
 *
 * # Safety
 * `m` must be a live handle from this library; `out` must be valid.
 */
BsStatus bs_matrix_shift(const BsMatrix *m, double s, BsMatrix **out);

/**
 * Releases a matrix handle. NULL is ignored.
 *
 * # Safety
 * `m` must be a handle from this library, not yet freed.
 */
void bs_matrix_free(BsMatrix *m);

/**
 * Bidiagonal factorization verdicts of the truncation of order n+1:
 * `positive` reports an all-positive factorization, `oscillatory` the
 * Gantmacher--Krein test.
 *
 * # Safety
 * `m` must be live; `positive` and `oscillatory` must be valid or NULL.
 */
BsStatus bs_factorize(const BsMatrix *m, uintptr_t n, int *positive, int *oscillatory);

/**
 * Smallest grid shift making the truncation's factorization all-positive.
 *
 * # Safety
 * `m` must be live; `out_s` must be a valid destination.
 */
BsStatus bs_oscillatory_shift(const BsMatrix *m, uintptr_t n, double *out_s);

/**
 * Eigenvalues (descending) and masses of a tridiagonal truncation of
 * order n+1. Both output arrays hold n+1 entries.
 *
 * # Safety
 * `m` must be a live tridiagonal handle; `lambdas` and `masses` must each
 * point to n+1 writable doubles (either may be NULL to skip).
 */
BsStatus bs_jacobi_spectrum(const BsMatrix *m, uintptr_t n, double *lambdas, double *masses);

/**
 * Builds the truncation spectrum of a banded (2,3) matrix with optional
 * initial-condition entries `nu` = \[ν¹₁, ν¹₂, ν²₂\] and `xi` = \[ξ₁\]
 * (NULL for identities).
 *
 * # Safety
 * `m` must be live; `nu` (if non-NULL) must hold 3 doubles and `xi`
 * 1 double; `out` must be valid. Release with [`bs_spectrum_free`].
 */
BsStatus bs_spectrum_new(const BsMatrix *m,
                         uintptr_t n,
                         const double *nu,
                         const double *xi,
                         BsSpectrum **out);

/**
 * Releases a spectrum handle. NULL is ignored.
 *
 * # Safety
 * `s` must be a handle from this library, not yet freed.
 */
void bs_spectrum_free(BsSpectrum *s);

/**
 * Truncation order N of a spectrum handle.
 *
 * # Safety
 * `s` must be live.
 */
uintptr_t bs_spectrum_order(const BsSpectrum *s);

/**
 * Copies the descending eigenvalues (n+1 entries).
 *
 * # Safety
 * `s` must be live; `out` must hold n+1 doubles.
 */
BsStatus bs_spectrum_eigenvalues(const BsSpectrum *s, double *out);

/**
 * Copies the rank-one measure weights ρ_{k,b} μ_{k,a}: 6 doubles per
 * node, ordered (b,a) = (1,1), (1,2), (1,3), (2,1), (2,2), (2,3), node by
 * node; `out` must hold 6·(n+1) doubles.
 *
 * # Safety
 * `s` must be live; `out` must hold 6·(n+1) writable doubles.
 */
BsStatus bs_spectrum_weights(const BsSpectrum *s, double *out);

/**
 * Weyl function matrix S(z): six complex entries in row-major (b,a)
 * order; `out_re` and `out_im` must each hold 6 doubles.
 *
 * # Safety
 * `s` must be live; `out_re` and `out_im` must hold 6 writable doubles.
 */
BsStatus bs_weyl(const BsSpectrum *s, double z_re, double z_im, double *out_re, double *out_im);

/**
 * Gauss quadrature degrees of precision: for each measure entry in
 * (b,a) row-major order writes d_{b,a}(N) and the largest observed exact
 * degree; `all_pass` is 1 when every observed degree covers the bound.
 *
 * # Safety
 * `s` must be live; `degrees` and `observed` must hold 6 writable
 * entries each (either may be NULL); `all_pass` may be NULL.
 */
BsStatus bs_quadrature_degrees(const BsSpectrum *s,
                               int64_t *degrees,
                               int64_t *observed,
                               int *all_pass);

#endif  /* BANDSPEC_H */
