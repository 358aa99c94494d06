#ifndef MELLIN_H
#define MELLIN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum MellinStatus {
  MELLIN_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  MELLIN_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  MELLIN_STATUS_INVALID_UTF8 = 2,
  /**
   * An expression failed to parse, or named an unknown function.
   */
  MELLIN_STATUS_PARSE = 3,
  /**
   * An argument lies outside the domain of the function.
   */
  MELLIN_STATUS_DOMAIN = 4,
  /**
   * The argument hit a pole.
   */
  MELLIN_STATUS_POLE = 5,
  /**
   * A value does not fit in binary64.
   */
  MELLIN_STATUS_OVERFLOW = 6,
  /**
   * An integrand or series term was not finite.
   */
  MELLIN_STATUS_NON_FINITE = 7,
  /**
   * Quadrature or series summation stopped before reaching the tolerance.
   */
  MELLIN_STATUS_NO_CONVERGENCE = 8,
  /**
   * An expression used a variable that was not bound.
   */
  MELLIN_STATUS_UNBOUND_VARIABLE = 9,
  MELLIN_STATUS_UNKNOWN_IDENTITY = 10,
  /**
   * The library panicked; this is a bug.
   */
  MELLIN_STATUS_PANIC = 11,
} MellinStatus;

/**
 * Quadrature and series settings. A NULL config means the defaults.
 */
typedef struct MellinConfig MellinConfig;

/**
 * A parsed expression.
 */
typedef struct MellinExpr MellinExpr;

/**
 * Result of a verification run.
 */
typedef struct MellinReport MellinReport;

typedef struct MellinComplex {
  double re;
  double im;
} MellinComplex;

/**
 * A value with its error estimate and the work spent on it (function
 * evaluations or series terms).
 */
typedef struct MellinEstimate {
  struct MellinComplex value;
  double error_estimate;
  uint64_t evaluations;
} MellinEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mellin_version(void);

/**
 * Static name of a status code, such as `"domain error"`.
 */
const char *mellin_status_name(enum MellinStatus status);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mellin_last_error_message(void);

/**
 * Zero-based column of the last error in its expression, or −1.
 */
int64_t mellin_last_error_position(void);

void mellin_clear_error(void);

/**
 * Γ(s).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_gamma(struct MellinComplex s, struct MellinComplex *out);

/**
 * Principal log Γ(s), continuous off the negative real axis.
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_log_gamma(struct MellinComplex s, struct MellinComplex *out);

/**
 * Hurwitz zeta ζ(s, z).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_hurwitz_zeta(struct MellinComplex s,
                                      struct MellinComplex z,
                                      struct MellinComplex *out);

/**
 * Alternating Hurwitz zeta η(s, z) = Σ (−1)ⁿ (n+z)^{−s}.
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_alt_hurwitz_eta(struct MellinComplex s,
                                         struct MellinComplex z,
                                         struct MellinComplex *out);

/**
 * Dirichlet L-function of the non-principal character mod 4.
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_euler_l(struct MellinComplex s, struct MellinComplex *out);

/**
 * Bernoulli polynomial Bₙ(z).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_bernoulli_poly(uint32_t n,
                                        struct MellinComplex z,
                                        struct MellinComplex *out);

/**
 * Euler polynomial Eₙ(z).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_euler_poly(uint32_t n, struct MellinComplex z, struct MellinComplex *out);

/**
 * Physicists' Hermite polynomial Hₙ(z).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_hermite(uint32_t n, struct MellinComplex z, struct MellinComplex *out);

/**
 * Exponential (Touchard) polynomial φₙ(z).
 *
 * # Safety
 * `out` must be NULL or point to writable memory.
 */
enum MellinStatus mellin_exp_poly(uint32_t n, struct MellinComplex z, struct MellinComplex *out);

/**
 * A config holding the default settings. Never NULL.
 */
struct MellinConfig *mellin_config_new(void);

/**
 * # Safety
 * `cfg` must be NULL or come from [`mellin_config_new`] and not be freed yet.
 */
void mellin_config_free(struct MellinConfig *cfg);

/**
 * Sets the quadrature tolerances and the refinement limit.
 *
 * # Safety
 * `cfg` must be NULL or a live config.
 */
enum MellinStatus mellin_config_set_quadrature(struct MellinConfig *cfg,
                                               double rel_tol,
                                               double abs_tol,
                                               uint32_t max_refinements);

/**
 * Sets the series stopping tolerance and term limit.
 *
 * # Safety
 * `cfg` must be NULL or a live config.
 */
enum MellinStatus mellin_config_set_series(struct MellinConfig *cfg,
                                           double rel_tol,
                                           uint64_t max_terms);

/**
 * Parses `source` into a new expression handle.
 *
 * # Safety
 * `source` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum MellinStatus mellin_expr_parse(const char *source, struct MellinExpr **out);

/**
 * # Safety
 * `expr` must be NULL or come from [`mellin_expr_parse`] and not be freed yet.
 */
void mellin_expr_free(struct MellinExpr *expr);

/**
 * Evaluates `expr` with `count` variables bound: `names[k]` takes the
 * value `values[k]`. `names` and `values` may be NULL when `count` is 0.
 *
 * # Safety
 * `names` and `values` must point to `count` elements, each name a
 * NUL-terminated string.
 */
enum MellinStatus mellin_expr_eval(const struct MellinExpr *expr,
                                   const char *const *names,
                                   const struct MellinComplex *values,
                                   size_t count,
                                   struct MellinComplex *out);

/**
 * Mellin transform ∫₀^∞ x^{s−1} g(x) dx of an expression in `x`.
 *
 * # Safety
 * Pointers must be NULL or valid; `cfg` may be NULL for defaults.
 */
enum MellinStatus mellin_forward(const struct MellinExpr *g,
                                 struct MellinComplex s,
                                 const struct MellinConfig *cfg,
                                 struct MellinEstimate *out);

/**
 * Inverse transform of an expression in `s` along Re s = `a`, at `x > 0`.
 *
 * A positive `height` truncates the line at ±height with no tail bound.
 * Otherwise G is assumed to be dominated by Γ and the height is chosen so
 * that the discarded tail stays below 1e-12.
 *
 * # Safety
 * Pointers must be NULL or valid; `cfg` may be NULL for defaults.
 */
enum MellinStatus mellin_inverse(const struct MellinExpr *big_g,
                                 double x,
                                 double a,
                                 double height,
                                 const struct MellinConfig *cfg,
                                 struct MellinEstimate *out);

/**
 * Σ ((−1)ⁿ/n!)·f(−n)·xⁿ for an expression `f` in `s`.
 *
 * # Safety
 * Pointers must be NULL or valid; `cfg` may be NULL for defaults.
 */
enum MellinStatus mellin_residue_sum(const struct MellinExpr *f,
                                     double x,
                                     const struct MellinConfig *cfg,
                                     struct MellinEstimate *out);

/**
 * Residual |∫x^{s−1}Σ(−x)ⁿf(n)/n! dx − Γ(s)f(−s)| for an expression `f`
 * in `s`, at 0 < Re s < 1.
 *
 * # Safety
 * Pointers must be NULL or valid; `cfg` may be NULL for defaults.
 */
enum MellinStatus mellin_master_check(const struct MellinExpr *f,
                                      struct MellinComplex s,
                                      const struct MellinConfig *cfg,
                                      double *residual);

/**
 * Checks `samples` random instances of the identity `id` (a family id such
 * as `"I2"` selects all its members), or of every identity when `id` is
 * NULL.
 *
 * # Safety
 * `id` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum MellinStatus mellin_verify(const char *id,
                                size_t samples,
                                uint64_t seed,
                                struct MellinReport **out);

/**
 * Number of passing and failing samples. Either out pointer may be NULL.
 *
 * # Safety
 * `report` must be a live report.
 */
enum MellinStatus mellin_report_counts(const struct MellinReport *report,
                                       uint64_t *n_pass,
                                       uint64_t *n_fail);

/**
 * The report as JSON, owned by the report; NULL if `report` is NULL.
 *
 * # Safety
 * `report` must be NULL or a live report.
 */
const char *mellin_report_json(const struct MellinReport *report);

/**
 * # Safety
 * `report` must be NULL or come from [`mellin_verify`] and not be freed yet.
 */
void mellin_report_free(struct MellinReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MELLIN_H */
