#ifndef REFLAP_H
#define REFLAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Outcome of a call. Values 0–6 match the `reflap` exit codes.
 */
typedef enum ReflapStatus {
  REFLAP_STATUS_OK = 0,
  REFLAP_STATUS_IO = 1,
  REFLAP_STATUS_RESONANCE = 2,
  REFLAP_STATUS_NON_CONTRACTIVE = 3,
  REFLAP_STATUS_UNSUPPORTED = 4,
  REFLAP_STATUS_INVALID_INPUT = 5,
  REFLAP_STATUS_VERIFICATION_MISMATCH = 6,
  REFLAP_STATUS_NULL_POINTER = 7,
  REFLAP_STATUS_PANIC = 8,
} ReflapStatus;

typedef enum ReflapRegime {
  REFLAP_REGIME_HYPERBOLIC = 0,
  REFLAP_REGIME_OSCILLATORY = 1,
  REFLAP_REGIME_MIXED = 2,
  REFLAP_REGIME_DEGENERATE = 3,
} ReflapRegime;

/*
 Samples on the symmetric grid `t_j = (j − N)·h`, `j = 0..2N`.
 */
typedef struct ReflapGrid ReflapGrid;

/*
 Trigonometric polynomial over a fixed frequency basis.
 */
typedef struct ReflapPoly ReflapPoly;

/*
 Parsed problem file.
 */
typedef struct ReflapProblem ReflapProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *reflap_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *reflap_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void reflap_string_free(char *s);

/*
 Regime of `(a, b)` and its two rates: `(α, β)` when hyperbolic, `(μ, ν)`
 when oscillatory, `(real, imaginary)` rates when mixed, zeros otherwise.

 # Safety
 Output pointers must be valid for writes.
 */
enum ReflapStatus reflap_classify(double a,
                                  double b,
                                  enum ReflapRegime *regime,
                                  double *rate1,
                                  double *rate2);

/*
 Zero polynomial over `n` positive basis generators.

 # Safety
 `generators` must point to `n` doubles; `poly_out` must be valid for writes.
 */
enum ReflapStatus reflap_poly_new(const double *generators, size_t n, struct ReflapPoly **poly_out);

/*
 Adds `cos_coeff·cos(λt) + sin_coeff·sin(λt)` with
 `λ = Σ (numer[i]/denom[i])·generator[i]`; `n` must equal the basis size.

 # Safety
 `poly` must be a live handle; `numer` and `denom` must point to `n` values.
 */
enum ReflapStatus reflap_poly_add_term(struct ReflapPoly *poly,
                                       const int64_t *numer,
                                       const int64_t *denom,
                                       size_t n,
                                       double cos_coeff,
                                       double sin_coeff);

/*
 # Safety
 `poly` must be a live handle and `value` valid for writes.
 */
enum ReflapStatus reflap_poly_eval(const struct ReflapPoly *poly, double t, double *value);

/*
 Number of stored frequencies; 0 for a null handle.

 # Safety
 `poly` must be null or a live handle.
 */
size_t reflap_poly_len(const struct ReflapPoly *poly);

/*
 Frequency value and coefficients of the `index`-th stored term, in
 canonical (ascending coordinate) order.

 # Safety
 `poly` must be a live handle; outputs must be valid for writes.
 */
enum ReflapStatus reflap_poly_term(const struct ReflapPoly *poly,
                                   size_t index,
                                   double *frequency,
                                   double *cos_coeff,
                                   double *sin_coeff);

/*
 # Safety
 `poly` must be null or a live handle, not used afterwards.
 */
void reflap_poly_free(struct ReflapPoly *poly);

/*
 Bounded solution of `ẍ + a·x + b·x(−t) = g` in closed form.

 # Safety
 `g` must be a live handle; `x_out` valid for writes.
 */
enum ReflapStatus reflap_bounded_solution(double a,
                                          double b,
                                          const struct ReflapPoly *g,
                                          double resonance_tol,
                                          struct ReflapPoly **x_out);

/*
 Coefficient sum of `ẍ + a·x + b·x(−t) − g`.

 # Safety
 `x` and `g` must be live handles; `residual` valid for writes.
 */
enum ReflapStatus reflap_residual(double a,
                                  double b,
                                  const struct ReflapPoly *x,
                                  const struct ReflapPoly *g,
                                  double *residual);

/*
 Parses a problem file held in a NUL-terminated UTF-8 string.

 # Safety
 `text` must be a valid C string; `problem_out` valid for writes.
 */
enum ReflapStatus reflap_problem_parse(const char *text, struct ReflapProblem **problem_out);

/*
 Canonical text of the problem.

 # Safety
 `problem` must be a live handle; `text_out` valid for writes.
 */
enum ReflapStatus reflap_problem_emit(const struct ReflapProblem *problem, char **text_out);

/*
 Copy of the problem's forcing.

 # Safety
 `problem` must be a live handle; `poly_out` valid for writes.
 */
enum ReflapStatus reflap_problem_forcing(const struct ReflapProblem *problem,
                                         struct ReflapPoly **poly_out);

/*
 Solves and verifies the problem as the command line does and returns
 the `key = value` report. A verification mismatch still fills
 `report_out` and returns `REFLAP_STATUS_VERIFICATION_MISMATCH`.
 `tail_cut ≤ 0` selects the default.

 # Safety
 `problem` must be a live handle; `report_out` valid for writes.
 */
enum ReflapStatus reflap_problem_run(const struct ReflapProblem *problem,
                                     double tail_cut,
                                     char **report_out);

/*
 Solution samples on the problem's grid: the closed form sampled (mode
 spectral), the Green quadrature (mode grid), or the Picard fixed point
 (mode picard). `tail_cut ≤ 0` selects the default.

 # Safety
 `problem` must be a live handle; `grid_out` valid for writes.
 */
enum ReflapStatus reflap_problem_solve_grid(const struct ReflapProblem *problem,
                                            double tail_cut,
                                            struct ReflapGrid **grid_out);

/*
 # Safety
 `problem` must be null or a live handle, not used afterwards.
 */
void reflap_problem_free(struct ReflapProblem *problem);

/*
 Number of nodes `2N + 1`; 0 for a null handle.

 # Safety
 `grid` must be null or a live handle.
 */
size_t reflap_grid_len(const struct ReflapGrid *grid);

/*
 Half-width `T` and step `h`.

 # Safety
 `grid` must be a live handle; outputs valid for writes.
 */
enum ReflapStatus reflap_grid_shape(const struct ReflapGrid *grid, double *halfwidth, double *step);

/*
 Borrowed pointer to the samples, valid while the handle lives; null for
 a null handle.

 # Safety
 `grid` must be null or a live handle.
 */
const double *reflap_grid_samples(const struct ReflapGrid *grid);

/*
 # Safety
 `grid` must be null or a live handle, not used afterwards.
 */
void reflap_grid_free(struct ReflapGrid *grid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REFLAP_H */
