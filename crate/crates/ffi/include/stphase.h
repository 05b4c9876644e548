#ifndef STPHASE_H
#define STPHASE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum StphaseStatus {
  STPHASE_STATUS_OK = 0,
  STPHASE_STATUS_NULL_POINTER = 1,
  STPHASE_STATUS_INVALID_ARGUMENT = 2,
  STPHASE_STATUS_DOMAIN = 3,
  STPHASE_STATUS_OUTSIDE_RADIUS = 4,
  STPHASE_STATUS_TOO_FEW_TERMS = 5,
  STPHASE_STATUS_SERIES_FAILURE = 6,
  STPHASE_STATUS_ORACLE_CONVERGENCE = 7,
  STPHASE_STATUS_BUFFER_TOO_SMALL = 8,
  STPHASE_STATUS_PANIC = 9,
} StphaseStatus;

typedef enum StphaseRegion {
  STPHASE_REGION_HALF_LINE_POSITIVE = 0,
  STPHASE_REGION_HALF_LINE_NEGATIVE = 1,
  STPHASE_REGION_FULL_LINE = 2,
} StphaseRegion;

typedef enum StphaseVariant {
  STPHASE_VARIANT_CORRECTED = 0,
  STPHASE_VARIANT_PAPER = 1,
} StphaseVariant;

// Opaque smooth amplitude.
typedef struct StphaseAmplitude StphaseAmplitude;

// Opaque truncated expansion.
typedef struct StphaseExpansion StphaseExpansion;

// Opaque phase model.
typedef struct StphasePhase StphasePhase;

typedef struct StphaseComplex {
  double re;
  double im;
} StphaseComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *stphase_version(void);

// Message of the last failed call on this thread; empty if none.
// Valid until the next failing call on the same thread.
const char *stphase_last_error(void);

// # Safety
// `out` must be null or point to writable storage for one `double`.
enum StphaseStatus stphase_gamma(double x, double *out);

// Principal branch of the Lambert W function.
//
// # Safety
// `out` must be null or point to writable storage for one `double`.
enum StphaseStatus stphase_lambert_w0(double y, double *out);

// Builds the phase `x^p (1 + sum_j a_j x^j)` with `a_1..a_len` read from
// `perturbation` (which may be null when `len` is 0).
//
// # Safety
// `perturbation` must point to `len` readable doubles; `out` must be writable.
enum StphaseStatus stphase_phase_new(double p,
                                     const double *perturbation,
                                     size_t len,
                                     struct StphasePhase **out);

// Phase with `a_j = 1/j!` for `j <= truncation`.
//
// # Safety
// `out` must be writable.
enum StphaseStatus stphase_phase_new_exp(double p, size_t truncation, struct StphasePhase **out);

// # Safety
// `phase` must be null or a pointer from `stphase_phase_new*` not yet freed.
void stphase_phase_free(struct StphasePhase *phase);

// Radii of the phase: `r0` and the certified validity radius. Either
// output may be null.
//
// # Safety
// `phase` must be a live handle; non-null outputs must be writable.
enum StphaseStatus stphase_phase_radii(const struct StphasePhase *phase,
                                       double *r0,
                                       double *validity_radius);

// Writes the coefficients of the inverse series through `y^order` into
// `coeffs[0..=order]`.
//
// # Safety
// `phase` must be a live handle; `coeffs` must hold `capacity` doubles.
enum StphaseStatus stphase_phase_inverse_series(const struct StphasePhase *phase,
                                                size_t order,
                                                double *coeffs,
                                                size_t capacity);

// Polynomial germ times a cutoff equal to 1 on `[-r1, r1]` and vanishing
// outside `(-r2, r2)`.
//
// # Safety
// `germ` must point to `len` readable doubles; `out` must be writable.
enum StphaseStatus stphase_amplitude_new(const double *germ,
                                         size_t len,
                                         double r1,
                                         double r2,
                                         struct StphaseAmplitude **out);

// # Safety
// `amplitude` must be null or a pointer from `stphase_amplitude_new` not yet freed.
void stphase_amplitude_free(struct StphaseAmplitude *amplitude);

// # Safety
// `amplitude` must be a live handle; `out` must be writable.
enum StphaseStatus stphase_amplitude_eval(const struct StphaseAmplitude *amplitude,
                                          double x,
                                          double *out);

// Truncated expansion with `n` as the truncation parameter; `sign` is +1 or -1.
//
// # Safety
// `phase` and `amplitude` must be live handles; `out` must be writable.
enum StphaseStatus stphase_expansion_new(const struct StphasePhase *phase,
                                         const struct StphaseAmplitude *amplitude,
                                         int32_t sign,
                                         enum StphaseRegion region,
                                         size_t n,
                                         enum StphaseVariant variant,
                                         struct StphaseExpansion **out);

// # Safety
// `expansion` must be null or a pointer from `stphase_expansion_new` not yet freed.
void stphase_expansion_free(struct StphaseExpansion *expansion);

// Number of terms, or 0 for a null handle.
//
// # Safety
// `expansion` must be null or a live handle.
size_t stphase_expansion_len(const struct StphaseExpansion *expansion);

// # Safety
// `expansion` must be a live handle; `out` must be writable.
enum StphaseStatus stphase_expansion_remainder_exponent(const struct StphaseExpansion *expansion,
                                                        double *out);

// Term `index`: `coefficient * lambda^(-exponent)`.
//
// # Safety
// `expansion` must be a live handle; outputs must be writable.
enum StphaseStatus stphase_expansion_term(const struct StphaseExpansion *expansion,
                                          size_t index,
                                          double *exponent,
                                          struct StphaseComplex *coefficient);

// # Safety
// `expansion` must be a live handle; `out` must be writable.
enum StphaseStatus stphase_expansion_evaluate(const struct StphaseExpansion *expansion,
                                              double lambda,
                                              struct StphaseComplex *out);

// Quadrature value of the integral at finite `lambda`. `error_estimate`
// may be null.
//
// # Safety
// `phase` and `amplitude` must be live handles; non-null outputs must be writable.
enum StphaseStatus stphase_oracle_integrate(const struct StphasePhase *phase,
                                            const struct StphaseAmplitude *amplitude,
                                            double lambda,
                                            int32_t sign,
                                            enum StphaseRegion region,
                                            struct StphaseComplex *value,
                                            double *error_estimate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STPHASE_H */
