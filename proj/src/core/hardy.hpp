// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/means.hpp"

namespace hm {

// Hardy constant of the p-th power mean:
//   1 at p = -inf, (1-p)^(-1/p) on (-inf,0) u (0,1), e at p = 0,
//   +inf on [1, +inf].
double hardy_power_constant(double p);

enum class HardyMethod {
  ClosedFormPower,
  ClosedFormGini,
  LimitExtrapolation,
  IntegralEquation,
  KappaBoundsInterval,
};

const char* to_string(HardyMethod m);

struct HardyEstimate {
  std::optional<double> constant;  // +inf allowed; nullopt when undetermined
  HardyMethod method = HardyMethod::ClosedFormPower;
  std::optional<std::pair<double, double>> interval;  // bound-only results
  std::vector<std::string> caveats;
  std::optional<LimitEstimate> limit_diag;
  std::optional<IntegralResult> integral_diag;
  std::optional<ShapeReport> shape_diag;
};

// Closed form for Gini means: requires min(p,q) <= 0 <= max(p,q) <= 1
// (increasing + concave); +inf at max(p,q) = 1, otherwise
// ((1-p)/(1-q))^(1/(q-p)), with e at p = q = 0.
HardyEstimate gini_hardy_constant(double p, double q);

// n * M(1, 1/2, ..., 1/n) sampled at geometric n up to n_max, extrapolated.
// Closed-form families use running accumulators; solver-backed families are
// solved fresh at each geometric sample. Property-check failures and
// non-convergence are reported as caveats, never thrown.
HardyEstimate hardy_limit_estimate(const MeanSpec& m, std::int64_t n_max,
                                   double tol = kExtrapTol);

// Lower bound from the harmonic-prefix construction: for each y, the minimum
// of (n/y) * M(y/1, ..., y/n) over geometric tail samples n in
// [n_max/8, n_max]; the result is the max over ys.
HardyEstimate hardy_lower_bound(const MeanSpec& m, std::span<const double> ys,
                                std::int64_t n_max);

// Hardy constant of the homogeneous deviation mean E_f: +inf when the
// improper integral of f(1/t) over (0,1] diverges; otherwise the unique root
// c > 1 of F(c) = integral_0^c f(1/t) dt, located by doubling the upper
// bracket (BracketCap past 2^64) and a bracketed root solve.
HardyEstimate hardy_deviation_constant(const Generator& f, double quad_tol = kQuadTol,
                                       double root_tol = kRootTol);

// kappa-based analysis of the quasi-arithmetic mean QA_f.
// If the kappa limit p at 0+ exists and kappa <= p globally: constant C(p).
// Else if f'/f'' is convex and negative (kappa decreasing): C(limit at 0+).
// Otherwise the interval [C(inf kappa), C(sup kappa)].
HardyEstimate qa_hardy_analysis(const Generator& g, const GridSpec& grid = GridSpec{},
                                double tol = 1e-9);

struct SequenceSpec {
  enum class Kind { Harmonic, PowerLaw, Geometric, Custom };
  Kind kind = Kind::Harmonic;
  double param = 1.0;
  std::vector<double> custom;

  static SequenceSpec harmonic(double y);    // x_n = y/n
  static SequenceSpec power_law(double s);   // x_n = n^-s
  static SequenceSpec geometric(double r);   // x_n = r^n (clamped at 1e-300)
  static SequenceSpec custom_terms(std::vector<double> terms);

  double term(std::int64_t n) const;  // n >= 1
  std::optional<bool> summable() const;
  std::string describe() const;
};

struct VerificationReport {
  std::int64_t N = 0;
  double partial_mean_sum = 0.0;
  double partial_x_sum = 0.0;
  double ratio = 0.0;
  double bound = 0.0;  // +inf allowed
  bool satisfied = false;
  std::vector<std::pair<std::int64_t, double>> per_step_ratios;  // optional series
  std::optional<bool> summable;
};

// Partial sums of M(x_1..x_n) against partial sums of x_n for n <= N;
// satisfied iff ratio <= bound + 1e-9. Closed-form families run on O(1)
// per-step accumulators; solver families solve each prefix.
VerificationReport verify_hardy_inequality(const MeanSpec& m, const SequenceSpec& seq,
                                           std::int64_t N, double bound,
                                           bool per_step = false);

}  // namespace hm
