// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/expression.hpp"
#include "core/numerics.hpp"

namespace hm {

enum class GeneratorTag { Power, Log, GiniChi, Custom };

// An evaluable generator f with symbolic f' and f'' on a positive domain.
// Construction validates, on a log-spaced sample grid, that f is finite and
// strictly monotone and that f' never vanishes or flips sign; violations are
// rejected with DerivativeVanishes / NonFinite / DomainError.
class Generator {
 public:
  static Generator from_expression(ExprPtr f, Interval domain = default_domain(),
                                   GeneratorTag tag = GeneratorTag::Custom,
                                   double p = 0.0, double q = 0.0);
  static Generator parse(const std::string& text, Interval domain = default_domain());
  // x^p for p != 0, ln(x) for p = 0 (the power-mean generator convention)
  static Generator power(double p, Interval domain = default_domain());
  static Generator log(Interval domain = default_domain());
  // chi_{p,q}(x) = (x^p - x^q)/(p - q) for p != q, x^p ln(x) for p = q
  static Generator gini_chi(double p, double q, Interval domain = default_domain());

  static Interval default_domain() { return Interval(1e-6, 1e6); }

  double f(double x) const { return evaluate(f_, x); }
  double f1(double x) const { return evaluate(f1_, x); }
  double f2(double x) const { return evaluate(f2_, x); }

  // kappa(x) = x f''(x)/f'(x) + 1; DomainError outside the domain,
  // DerivativeVanishes where f'(x) = 0.
  double kappa(double x) const;
  // same, without the domain check (used for 0+ tail probing)
  double kappa_unchecked(double x) const { return x * f2(x) / f1(x) + 1.0; }

  const ExprPtr& expr() const { return f_; }
  const ExprPtr& expr_d1() const { return f1_; }
  const ExprPtr& expr_d2() const { return f2_; }
  const Interval& domain() const { return domain_; }
  GeneratorTag tag() const { return tag_; }
  double param_p() const { return p_; }
  double param_q() const { return q_; }
  bool increasing() const { return increasing_; }

  std::string describe() const;

 private:
  Generator(ExprPtr f, ExprPtr f1, ExprPtr f2, Interval domain, GeneratorTag tag, double p,
            double q, bool increasing)
      : f_(std::move(f)),
        f1_(std::move(f1)),
        f2_(std::move(f2)),
        domain_(domain),
        tag_(tag),
        p_(p),
        q_(q),
        increasing_(increasing) {}

  ExprPtr f_, f1_, f2_;
  Interval domain_;
  GeneratorTag tag_;
  double p_, q_;
  bool increasing_;
};

struct GridSpec {
  double lo = 1e-3;
  double hi = 1e3;
  int count = 48;
};

enum class SecondDerivSign { AllZero, AllNegative, AllPositive, Mixed };

const char* to_string(SecondDerivSign s);

struct ShapeReport {
  SecondDerivSign f2_sign = SecondDerivSign::Mixed;
  bool ratio_convex = false;    // f'/f'' midpoint-convex on all grid pairs
  bool ratio_negative = false;  // f'/f'' < 0 on the grid
  bool kappa_decreasing = false;
  double kappa_limit_at_zero = 0.0;  // may be +-inf
  bool kappa_limit_exists = false;   // tail extrapolation stabilized
  double kappa_global_inf = 0.0;     // over grid and 0+ tail samples
  double kappa_global_sup = 0.0;
  std::vector<double> grid;
  std::vector<double> kappa_values;
  // concavity of the quasi-arithmetic mean QA_f: f'' identically zero, or
  // f'' nowhere zero with f'/f'' convex and negative
  bool qa_concave_eligible = false;
  // hypotheses of the homogeneous-deviation route: f increasing, f'' <= 0
  bool deviation_concave_eligible = false;
  LimitEstimate kappa_limit_diag;
};

// Grid must satisfy count >= 16 and lie inside the generator's domain.
ShapeReport shape_report(const Generator& g, const GridSpec& grid,
                         double extrap_tol = kExtrapTol);

enum class Comparison { FLeqG, GLeqF, Incomparable };

const char* to_string(Comparison c);

// Pointwise kappa comparison on a shared log grid; FLeqG iff
// kappa_f <= kappa_g + tol everywhere (ties report FLeqG).
Comparison compare_generators(const Generator& f, const Generator& g, const GridSpec& grid,
                              double tol = 1e-9);

// Named generators used across the test suites: powers, log, affine,
// chi_{p,q} instances, and a couple of grammar-built customs.
std::vector<std::pair<std::string, Generator>> catalog_generators();

}  // namespace hm
