// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace hm {

// Default tolerances; every entry point takes an explicit override.
inline constexpr double kRootTol = 1e-12;    // relative
inline constexpr double kQuadTol = 1e-10;    // absolute
inline constexpr double kExtrapTol = 1e-6;

using Fn1 = std::function<double(double)>;

struct Interval {
  double lo;
  double hi;
  Interval(double lo_, double hi_);  // throws InvalidArgument unless lo < hi, both finite
  double width() const { return hi - lo; }
};

enum class IntegralStatus { Converged, Diverged, Inconclusive };

const char* to_string(IntegralStatus s);

struct IntegralResult {
  IntegralStatus status = IntegralStatus::Inconclusive;
  double value = 0.0;        // meaningful iff status == Converged
  double tail_bound = 0.0;   // certified remainder bound when Converged
  std::int64_t evaluations = 0;
};

struct LimitEstimate {
  std::vector<std::pair<double, double>> raw_terms;  // (n, a_n)
  double extrapolated = 0.0;
  bool converged = false;
  double fitted_decay_exponent = 0.0;
  // extrapolant from each 3-sample window, one entry per window
  std::vector<double> history;
};

// Bracketed root of a continuous, strictly monotone fn. Brent: bisection
// safeguarded by secant/inverse-quadratic steps. Stops when |fn(r)| <= tol
// or the bracket width falls below tol*max(1,|r|).
// Throws BracketInvalid when fn has the same nonzero sign at both endpoints,
// NonFinite when fn evaluates to a non-finite value.
double find_root_monotone(const Fn1& fn, Interval bracket, double tol = kRootTol);

// Adaptive Simpson on [a, b] with estimated error <= tol (absolute).
double integrate_finite(const Fn1& fn, double a, double b, double tol = kQuadTol,
                        std::int64_t* eval_counter = nullptr,
                        std::int64_t eval_budget = -1);

// Improper integral of fstar over (0, 1], singularity allowed at t -> 0+.
// Evaluated after the substitution u = 1/t as the integral of fstar(1/u)/u^2
// over [1, inf) with geometric cutoffs U = 2^k. Converged once the certified
// geometric tail bound drops below tol; Diverged when the cutoff increments
// fail to decrease by a factor >= 1.1 for 5 consecutive doublings;
// Inconclusive when the evaluation budget runs out first.
IntegralResult integrate_unit_improper(const Fn1& fstar, double tol = kQuadTol,
                                       std::int64_t budget = 500000);

// Limit of a slowly converging sequence sampled at geometrically spaced n.
// Fits a_n ~ L + c*n^(-alpha) on each trailing 3-sample window (Richardson
// with the fitted exponent, equivalently Aitken delta-squared on geometric
// samples); converged iff the last two window extrapolants differ by <= tol.
// Throws InsufficientSamples when fewer than 4 terms are supplied.
LimitEstimate extrapolate_limit(const std::vector<std::pair<double, double>>& terms,
                                double tol = kExtrapTol);

// log(exp(a) + exp(b)) without overflow
double logaddexp(double a, double b);

}  // namespace hm
