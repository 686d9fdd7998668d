#ifndef MODUNIT_H
#define MODUNIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Which q-series [`mu_series_new`] computes.
typedef enum MuSeriesKind {
  MU_SERIES_KIND_F_CHI = 0,
  MU_SERIES_KIND_F_CHI_BREVE = 1,
  MU_SERIES_KIND_G_CHI = 2,
  MU_SERIES_KIND_G_CHI_BREVE = 3,
  MU_SERIES_KIND_H_CHI = 4,
  MU_SERIES_KIND_T = 5,
} MuSeriesKind;

// Result codes. 1–3 agree with the command-line exit codes.
typedef enum MuStatus {
  MU_STATUS_OK = 0,
  // An identity or invariant of the computation failed.
  MU_STATUS_VERIFICATION_FAILED = 1,
  MU_STATUS_BAD_INPUT = 2,
  MU_STATUS_PRECISION_TOO_LOW = 3,
  MU_STATUS_NULL_POINTER = 4,
  // The library panicked; the handle arguments are left untouched.
  MU_STATUS_INTERNAL = 5,
} MuStatus;

// Opaque integer polynomial.
typedef struct MuPoly MuPoly;

// Opaque truncated Laurent series.
typedef struct MuSeries MuSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf`.
//
// # Safety
// `buf` must be null or valid for `cap` bytes.
size_t mu_last_error(char *buf, size_t cap);

// Library version as a static NUL-terminated string.
const char *mu_version(void);

// v_χ as the fraction num/den.
//
// # Safety
// `num` and `den` must be valid for writes.
enum MuStatus mu_bernoulli_exponent(uint64_t level, int64_t *num, int64_t *den);

// Writes up to `cap` levels of the divisibility survey to `levels` and
// their count to `len`; the count may exceed `cap`.
//
// # Safety
// `levels` must be null or valid for `cap` writes; `len` must be valid.
enum MuStatus mu_survey(uint64_t max_level, uint64_t *levels, size_t cap, size_t *len);

// Computes a unit or t through q^(precision − 1).
//
// # Safety
// `out` must be valid for writes. On success `*out` owns a handle that
// must be released with [`mu_series_free`].
enum MuStatus mu_series_new(uint64_t level,
                            enum MuSeriesKind kind,
                            int64_t precision,
                            struct MuSeries **out);

// # Safety
// `s` must be null or a handle from [`mu_series_new`] not yet freed.
void mu_series_free(struct MuSeries *s);

// # Safety
// `s` must be a live series handle.
int64_t mu_series_valuation(const struct MuSeries *s);

// Exponent of the O(q^k) error term.
//
// # Safety
// `s` must be a live series handle.
int64_t mu_series_precision(const struct MuSeries *s);

// Coefficient of q^k as exact text: an integer, `a/b`, or `a+b*sqrt(N)`.
//
// # Safety
// `s` must be a live series handle and `buf` null or valid for `cap` bytes.
size_t mu_series_coeff(const struct MuSeries *s, int64_t k, char *buf, size_t cap);

// Coefficient of q^k rounded to a double (real embedding √N > 0).
//
// # Safety
// `s` must be a live series handle.
double mu_series_coeff_f64(const struct MuSeries *s, int64_t k);

// Polynomial from `len` coefficients, highest degree first.
//
// # Safety
// `coeffs` must be valid for `len` reads and `out` for writes.
enum MuStatus mu_poly_new(const int64_t *coeffs, size_t len, struct MuPoly **out);

// # Safety
// `p` must be null or a polynomial handle not yet freed.
void mu_poly_free(struct MuPoly *p);

// Degree, or −1 for the zero polynomial or a null handle.
//
// # Safety
// `p` must be a live polynomial handle.
int64_t mu_poly_degree(const struct MuPoly *p);

// Coefficient of T^k as decimal text.
//
// # Safety
// `p` must be a live polynomial handle and `buf` null or valid for `cap` bytes.
size_t mu_poly_coeff(const struct MuPoly *p, size_t k, char *buf, size_t cap);

// The polynomial in conventional notation with variable `var`.
//
// # Safety
// `p` must be a live handle, `var` a NUL-terminated string, and `buf` null
// or valid for `cap` bytes.
size_t mu_poly_format(const struct MuPoly *p, const char *var, char *buf, size_t cap);

// The nontrivial zero-orbit polynomial p_N of h_χ on X_0^+(N), in the X
// coordinate (`y_side` = 0) or the Y coordinate.
//
// # Safety
// `out` must be valid for writes.
enum MuStatus mu_zero_orbit(uint64_t level, int32_t y_side, struct MuPoly **out);

// Sets `*splits` to 1 iff `p` splits over ℚ(√d) into two conjugate
// factors of half degree, else 0.
//
// # Safety
// `p` must be a live handle and `splits` valid for writes.
enum MuStatus mu_quadratic_subfield(const struct MuPoly *p, uint64_t d, int32_t *splits);

// Largest of |h_χ(τ)| and |f̆_χ(τ)² + 1| at the Heegner point of
// discriminant −4.
//
// # Safety
// `residual` must be valid for writes.
enum MuStatus mu_heegner_residual(uint64_t level, double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODUNIT_H */
