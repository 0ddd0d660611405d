// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/generator.hpp"

namespace hm {

// ((sum x_i^p)/n)^(1/p); geometric mean at p = 0, min/max at p = -+inf.
// Power sums factor out an extremal entry first, so |p| up to a few hundred
// stays finite. Throws EmptyInput / NonPositiveEntry.
double power_mean(double p, std::span<const double> xs);

// f^{-1} of the mean of f-values; the inverse is a bracketed root solve on
// [min xs, max xs] (valid by internality). BracketFailure signals a
// generator that is not monotone over the data range.
double quasi_arithmetic_mean(const Generator& g, std::span<const double> xs,
                             double root_tol = kRootTol);

// (sum x^p / sum x^q)^{1/(p-q)}, or exp(sum x^p ln x / sum x^p) when p = q;
// both branches evaluated in log space (max-factored power sums).
double gini_mean(double p, double q, std::span<const double> xs);

// Unique root y of sum_i E(x_i, y) on [min xs, max xs]. E must vanish on the
// diagonal and decrease strictly in y.
double deviation_mean(const std::function<double(double, double)>& E,
                      std::span<const double> xs, double root_tol = kRootTol);

// Deviation mean with E(x, y) = f(x/y); requires f(1) = 0 and f increasing.
double homogeneous_deviation_mean(const Generator& f, std::span<const double> xs,
                                  double root_tol = kRootTol);

enum class MeanFamily { Power, QuasiArithmetic, Gini, Deviation, HomogeneousDeviation };

const char* to_string(MeanFamily f);

struct DeviationFn {
  std::string name;
  std::function<double(double, double)> E;
};

class MeanSpec {
 public:
  static MeanSpec power(double p);  // p in [-inf, +inf]
  static MeanSpec quasi_arithmetic(Generator g);
  static MeanSpec gini(double p, double q);
  static MeanSpec deviation(DeviationFn E);
  // validates |f(1)| <= 1e-12 and f strictly increasing (sampled)
  static MeanSpec homogeneous_deviation(Generator f);

  MeanFamily family() const { return family_; }
  double p() const { return p_; }
  double q() const { return q_; }
  const Generator& generator() const;
  const DeviationFn& deviation_fn() const;
  // Power, Gini and homogeneous-deviation means are homogeneous by
  // construction; general QA/deviation means are not.
  bool homogeneous_family() const;
  bool closed_form_family() const {
    return family_ == MeanFamily::Power || family_ == MeanFamily::Gini;
  }
  std::string describe() const;

  double operator()(std::span<const double> xs) const;

 private:
  MeanSpec() = default;
  MeanFamily family_ = MeanFamily::Power;
  double p_ = 0.0, q_ = 0.0;
  std::optional<Generator> gen_;
  std::optional<DeviationFn> dev_;
};

double evaluate_mean(const MeanSpec& m, std::span<const double> xs);

struct Counterexample {
  std::string property;
  std::vector<double> x;
  std::vector<double> u;  // second vector where the check needs a pair
};

struct PropertyReport {
  bool symmetric = true;
  bool repetition_invariant = true;
  bool monotone = true;
  bool internal = true;
  std::optional<bool> homogeneous;  // nullopt: not applicable to the family
  bool jensen_concave_sampled = true;
  std::optional<Counterexample> counterexample;  // first failure seen
  std::vector<Counterexample> counterexamples;   // one per false flag
};

// Randomized structural checks on vectors of dimension <= 8 with entries
// log-uniform in [1e-3, 1e3]; reproducible for a fixed seed. Failures are
// reported with concrete counterexamples, never thrown.
PropertyReport check_mean_properties(const MeanSpec& m, std::uint64_t seed, int trials);

}  // namespace hm
