/* SPDX-License-Identifier: Apache-2.0
 *
 * hardymeans — generalized means (power, quasi-arithmetic, Gini, deviation)
 * and their Hardy constants.
 *
 * All functions return hm_status; HM_OK is 0. On failure, hm_last_error()
 * returns a thread-local description of the most recent error. Objects are
 * opaque handles created by hm_*_create-style functions and released with
 * the matching hm_*_free. Rich results (Hardy estimates, shape reports,
 * verification reports) are returned as JSON strings allocated by the
 * library; release them with hm_string_free.
 */
#ifndef HARDYMEANS_H
#define HARDYMEANS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HM_API __declspec(dllexport)
#else
#define HM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
  HM_OK = 0,
  HM_ERR_SYNTAX = 1,                /* malformed generator expression */
  HM_ERR_NON_CONSTANT_EXPONENT = 2, /* x^expr(x) is outside the grammar */
  HM_ERR_DOMAIN = 3,
  HM_ERR_DERIVATIVE_VANISHES = 4,
  HM_ERR_BRACKET = 5,               /* invalid/failed root bracket, bracket cap */
  HM_ERR_NON_FINITE = 6,
  HM_ERR_INSUFFICIENT_SAMPLES = 7,
  HM_ERR_EMPTY_INPUT = 8,
  HM_ERR_NON_POSITIVE_ENTRY = 9,
  HM_ERR_INVALID_ARGUMENT = 10,
  HM_ERR_INTERNAL = 11
} hm_status;

typedef struct hm_generator hm_generator;
typedef struct hm_mean hm_mean;

HM_API const char* hm_version(void);
HM_API const char* hm_status_name(hm_status s);
/* thread-local message for the last failing call in this thread */
HM_API const char* hm_last_error(void);
/* byte offset into the input for parser errors, -1 otherwise */
HM_API long hm_last_error_position(void);
HM_API void hm_string_free(char* s);

/* --- generators: f, f', f'' on a positive domain ------------------------- */

/* Parse an expression in the variable x; grammar: + - * / ^const,
 * ln/exp/sqrt, numbers, x, e, pi. Domain defaults to [1e-6, 1e6] when
 * lo >= hi is passed. */
HM_API hm_status hm_generator_parse(const char* text, double domain_lo, double domain_hi,
                                    hm_generator** out);
/* x^p (ln x for p = 0) */
HM_API hm_status hm_generator_power(double p, hm_generator** out);
/* chi_{p,q}(x) = (x^p - x^q)/(p-q), or x^p ln x when p = q */
HM_API hm_status hm_generator_gini_chi(double p, double q, hm_generator** out);
HM_API void hm_generator_free(hm_generator* g);

/* order 0, 1, 2 -> f, f', f'' */
HM_API hm_status hm_generator_eval(const hm_generator* g, int order, double x, double* out);
/* canonical printed form of f (order 0) or its derivatives */
HM_API hm_status hm_generator_print(const hm_generator* g, int order, char** out);
/* kappa(x) = x f''(x)/f'(x) + 1 */
HM_API hm_status hm_generator_kappa(const hm_generator* g, double x, double* out);

/* --- means ---------------------------------------------------------------- */

/* p may be +-HUGE_VAL for the max/min means */
HM_API hm_status hm_mean_power(double p, hm_mean** out);
HM_API hm_status hm_mean_quasi_arithmetic(const hm_generator* g, hm_mean** out);
HM_API hm_status hm_mean_gini(double p, double q, hm_mean** out);
/* requires f(1) = 0 and f strictly increasing */
HM_API hm_status hm_mean_homogeneous_deviation(const hm_generator* f, hm_mean** out);
HM_API void hm_mean_free(hm_mean* m);

HM_API hm_status hm_mean_eval(const hm_mean* m, const double* xs, size_t n, double* out);

/* randomized structural checks; JSON PropertyReport */
HM_API hm_status hm_mean_check_properties(const hm_mean* m, uint64_t seed, int trials,
                                          char** json_out);

/* --- shape analysis ------------------------------------------------------- */

/* JSON ShapeReport on a log grid of `count` >= 16 points in [lo, hi] */
HM_API hm_status hm_shape_report(const hm_generator* g, double lo, double hi, int count,
                                 char** json_out);
/* verdict: 0 = f <= g, 1 = g <= f, 2 = incomparable */
HM_API hm_status hm_compare_generators(const hm_generator* f, const hm_generator* g,
                                       double lo, double hi, int count, int* verdict);

/* --- Hardy constants ------------------------------------------------------ */

/* C(p): 1, (1-p)^(-1/p), e, +inf by parameter range */
HM_API hm_status hm_hardy_power_constant(double p, double* out);

/* JSON HardyEstimate:
 * {"constant": number|"inf"|null, "method": string,
 *  "interval": [lo,hi]|null, "caveats": [string], "diagnostics": {...}|null}
 */

/* closed forms; mean must be a power or Gini mean */
HM_API hm_status hm_hardy_closed_form(const hm_mean* m, char** json_out);
/* limit of n*M(1, 1/2, ..., 1/n) with extrapolation; n_max >= 64;
 * tol <= 0 selects the default */
HM_API hm_status hm_hardy_limit(const hm_mean* m, int64_t n_max, double tol, char** json_out);
/* integral-equation root for the homogeneous deviation mean generated by f */
HM_API hm_status hm_hardy_integral(const hm_generator* f, char** json_out);
/* kappa-based analysis of the quasi-arithmetic mean generated by g */
HM_API hm_status hm_hardy_kappa_analysis(const hm_generator* g, char** json_out);
/* harmonic-prefix lower bound, max over the ys grid */
HM_API hm_status hm_hardy_lower_bound(const hm_mean* m, const double* ys, size_t n_ys,
                                      int64_t n_max, char** json_out);

/* --- Hardy inequality verification ---------------------------------------- */

/* sequence kinds: "harmonic" (param = y), "powerlaw" (param = s),
 * "geometric" (param = r), "custom" (terms/n_terms used instead).
 * bound may be HUGE_VAL. JSON VerificationReport:
 * {"N":..,"partial_mean_sum":..,"partial_x_sum":..,"ratio":..,
 *  "bound":..|"inf","satisfied":..,"per_step_ratios":[[n,r],...]|null,
 *  "summable":bool|null} */
HM_API hm_status hm_verify_hardy(const hm_mean* m, const char* seq_kind, double seq_param,
                                 const double* terms, size_t n_terms, int64_t N, double bound,
                                 int per_step, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* HARDYMEANS_H */
