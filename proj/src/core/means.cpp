// SPDX-License-Identifier: Apache-2.0
#include "core/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/rng.hpp"

namespace hm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(std::span<const double> xs) {
  if (xs.empty()) throw Error(errc::empty_input, "mean of an empty vector");
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(errc::non_positive_entry, "entries must be positive finite numbers");
    }
  }
}

// log(sum_i x_i^p) via max-shifted exponent sums
double log_power_sum(double p, std::span<const double> xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, p * std::log(x));
  double s = 0.0;
  for (double x : xs) s += std::exp(p * std::log(x) - m);
  return m + std::log(s);
}

}  // namespace

double power_mean(double p, std::span<const double> xs) {
  require_positive(xs);
  const double n = static_cast<double>(xs.size());
  if (p == kInf) return *std::max_element(xs.begin(), xs.end());
  if (p == -kInf) return *std::min_element(xs.begin(), xs.end());
  if (p == 0.0) {
    double s = 0.0;
    for (double x : xs) s += std::log(x);
    return std::exp(s / n);
  }
  // factor out an extremal entry; every exponentiated ratio is then <= 1
  double m = (p > 0.0) ? *std::max_element(xs.begin(), xs.end())
                       : *std::min_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::pow(x / m, p);
  return m * std::pow(s / n, 1.0 / p);
}

double quasi_arithmetic_mean(const Generator& g, std::span<const double> xs, double root_tol) {
  require_positive(xs);
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  if (lo == hi) return lo;

  double target = 0.0;
  for (double x : xs) {
    double v = g.f(x);
    if (!std::isfinite(v)) {
      throw Error(errc::domain_error, "generator non-finite at x = " + std::to_string(x));
    }
    target += v;
  }
  target /= static_cast<double>(xs.size());

  auto fn = [&](double y) { return g.f(y) - target; };
  try {
    return find_root_monotone(fn, Interval(lo, hi), root_tol);
  } catch (const Error& e) {
    if (e.code() != errc::bracket_invalid) throw;
    // round-off can push the f-average a hair outside [f(lo), f(hi)]
    double rlo = std::fabs(fn(lo)), rhi = std::fabs(fn(hi));
    double fscale = std::max({std::fabs(g.f(lo)), std::fabs(g.f(hi)), 1.0});
    if (std::min(rlo, rhi) <= 1e-9 * fscale) return rlo <= rhi ? lo : hi;
    throw Error(errc::bracket_failure,
                "quasi-arithmetic root bracket failed (generator not monotone on data range?)");
  }
}

double gini_mean(double p, double q, std::span<const double> xs) {
  require_positive(xs);
  if (p == q) {
    // exp( sum x^p ln x / sum x^p ), max-factored weights
    double m = -kInf;
    for (double x : xs) m = std::max(m, p * std::log(x));
    double w = 0.0, t = 0.0;
    for (double x : xs) {
      double lx = std::log(x);
      double wi = std::exp(p * lx - m);
      w += wi;
      t += wi * lx;
    }
    return std::exp(t / w);
  }
  double lsp = log_power_sum(p, xs);
  double lsq = log_power_sum(q, xs);
  return std::exp((lsp - lsq) / (p - q));
}

double deviation_mean(const std::function<double(double, double)>& E,
                      std::span<const double> xs, double root_tol) {
  require_positive(xs);
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  if (lo == hi) return lo;

  auto h = [&](double y) {
    double s = 0.0;
    for (double x : xs) s += E(x, y);
    return s;
  };
  try {
    return find_root_monotone(h, Interval(lo, hi), root_tol);
  } catch (const Error& e) {
    if (e.code() != errc::bracket_invalid) throw;
    double rlo = std::fabs(h(lo)), rhi = std::fabs(h(hi));
    if (std::min(rlo, rhi) <= 1e-9 * static_cast<double>(xs.size())) return rlo <= rhi ? lo : hi;
    throw Error(errc::bracket_failure,
                "deviation root not bracketed by [min, max] (invalid deviation function?)");
  }
}

double homogeneous_deviation_mean(const Generator& f, std::span<const double> xs,
                                  double root_tol) {
  return deviation_mean([&f](double x, double y) { return f.f(x / y); }, xs, root_tol);
}

const char* to_string(MeanFamily f) {
  switch (f) {
    case MeanFamily::Power: return "power";
    case MeanFamily::QuasiArithmetic: return "quasi_arithmetic";
    case MeanFamily::Gini: return "gini";
    case MeanFamily::Deviation: return "deviation";
    case MeanFamily::HomogeneousDeviation: return "homogeneous_deviation";
  }
  return "?";
}

MeanSpec MeanSpec::power(double p) {
  if (std::isnan(p)) throw Error(errc::invalid_argument, "power mean parameter is NaN");
  MeanSpec m;
  m.family_ = MeanFamily::Power;
  m.p_ = p;
  return m;
}

MeanSpec MeanSpec::quasi_arithmetic(Generator g) {
  MeanSpec m;
  m.family_ = MeanFamily::QuasiArithmetic;
  m.gen_ = std::move(g);
  return m;
}

MeanSpec MeanSpec::gini(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw Error(errc::invalid_argument, "gini mean needs finite parameters");
  }
  MeanSpec m;
  m.family_ = MeanFamily::Gini;
  m.p_ = p;
  m.q_ = q;
  return m;
}

MeanSpec MeanSpec::deviation(DeviationFn E) {
  if (!E.E) throw Error(errc::invalid_argument, "deviation function is empty");
  // sampled sanity: vanishes on the diagonal, decreasing in y
  for (double x : {0.5, 1.0, 2.0}) {
    if (std::fabs(E.E(x, x)) > 1e-9) {
      throw Error(errc::invalid_argument, "deviation function does not vanish on the diagonal");
    }
    if (!(E.E(x, 0.5 * x) > 0.0) || !(E.E(x, 2.0 * x) < 0.0)) {
      throw Error(errc::invalid_argument,
                  "deviation function is not decreasing in its second argument");
    }
  }
  MeanSpec m;
  m.family_ = MeanFamily::Deviation;
  m.dev_ = std::move(E);
  return m;
}

MeanSpec MeanSpec::homogeneous_deviation(Generator f) {
  if (std::fabs(f.f(1.0)) > 1e-12) {
    throw Error(errc::invalid_argument, "homogeneous deviation generator requires f(1) = 0");
  }
  if (!f.increasing()) {
    throw Error(errc::invalid_argument,
                "homogeneous deviation generator must be strictly increasing");
  }
  MeanSpec m;
  m.family_ = MeanFamily::HomogeneousDeviation;
  m.gen_ = std::move(f);
  return m;
}

const Generator& MeanSpec::generator() const {
  if (!gen_) throw Error(errc::invalid_argument, "mean family carries no generator");
  return *gen_;
}

const DeviationFn& MeanSpec::deviation_fn() const {
  if (!dev_) throw Error(errc::invalid_argument, "mean family carries no deviation function");
  return *dev_;
}

bool MeanSpec::homogeneous_family() const {
  return family_ == MeanFamily::Power || family_ == MeanFamily::Gini ||
         family_ == MeanFamily::HomogeneousDeviation;
}

std::string MeanSpec::describe() const {
  switch (family_) {
    case MeanFamily::Power: return "power(" + std::to_string(p_) + ")";
    case MeanFamily::Gini:
      return "gini(" + std::to_string(p_) + ", " + std::to_string(q_) + ")";
    case MeanFamily::QuasiArithmetic: return "qa[" + gen_->describe() + "]";
    case MeanFamily::HomogeneousDeviation: return "devmean[" + gen_->describe() + "]";
    case MeanFamily::Deviation: return "deviation[" + dev_->name + "]";
  }
  return "?";
}

double MeanSpec::operator()(std::span<const double> xs) const { return evaluate_mean(*this, xs); }

double evaluate_mean(const MeanSpec& m, std::span<const double> xs) {
  switch (m.family()) {
    case MeanFamily::Power: return power_mean(m.p(), xs);
    case MeanFamily::QuasiArithmetic: return quasi_arithmetic_mean(m.generator(), xs);
    case MeanFamily::Gini: return gini_mean(m.p(), m.q(), xs);
    case MeanFamily::Deviation: return deviation_mean(m.deviation_fn().E, xs);
    case MeanFamily::HomogeneousDeviation: return homogeneous_deviation_mean(m.generator(), xs);
  }
  throw Error(errc::invalid_argument, "unknown mean family");
}

namespace {

struct PropCtx {
  PropertyReport& rep;
  void fail(bool& flag, const std::string& prop, const std::vector<double>& x,
            const std::vector<double>& u = {}) {
    if (!flag) return;  // keep only the first counterexample per property
    flag = false;
    Counterexample ce{prop, x, u};
    if (!rep.counterexample) rep.counterexample = ce;
    rep.counterexamples.push_back(std::move(ce));
  }
};

}  // namespace

PropertyReport check_mean_properties(const MeanSpec& m, std::uint64_t seed, int trials) {
  if (trials < 1) throw Error(errc::invalid_argument, "trials must be >= 1");
  PropertyReport rep;
  bool homogeneous_flag = true;
  if (m.homogeneous_family()) rep.homogeneous = true;
  PropCtx ctx{rep};
  Rng rng(seed);

  const bool closed_form = m.closed_form_family();
  const double rep_tol = closed_form ? 1e-12 : 1e-9;

  for (int t = 0; t < trials; ++t) {
    int dim = rng.uniform_int(2, 8);
    std::vector<double> x(dim);
    for (double& v : x) v = rng.log_uniform(1e-3, 1e3);

    double M = evaluate_mean(m, x);
    double scale = std::max(1.0, std::fabs(M));

    // symmetry under a random permutation
    if (rep.symmetric) {
      std::vector<double> xs = x;
      for (int i = dim - 1; i > 0; --i) std::swap(xs[i], xs[rng.uniform_int(0, i)]);
      if (std::fabs(evaluate_mean(m, xs) - M) > 1e-9 * scale) {
        ctx.fail(rep.symmetric, "symmetric", x, xs);
      }
    }

    // repetition invariance, duplication factor <= 4
    if (rep.repetition_invariant) {
      int k = rng.uniform_int(2, 4);
      std::vector<double> xx;
      xx.reserve(static_cast<std::size_t>(dim) * k);
      for (double v : x) xx.insert(xx.end(), k, v);
      if (std::fabs(evaluate_mean(m, xx) - M) > rep_tol * scale) {
        ctx.fail(rep.repetition_invariant, "repetition_invariant", x, xx);
      }
    }

    // coordinate-wise monotonicity under a random upward perturbation
    if (rep.monotone) {
      std::vector<double> xp = x;
      int i = rng.uniform_int(0, dim - 1);
      xp[i] *= 1.0 + rng.uniform(1e-6, 1.0);
      if (evaluate_mean(m, xp) < M - 1e-9 * scale) ctx.fail(rep.monotone, "monotone", x, xp);
    }

    // internality
    if (rep.internal) {
      double lo = *std::min_element(x.begin(), x.end());
      double hi = *std::max_element(x.begin(), x.end());
      if (M < lo - 1e-9 * scale || M > hi + 1e-9 * scale) ctx.fail(rep.internal, "internal", x);
    }

    // homogeneity for the families that promise it
    if (rep.homogeneous && homogeneous_flag) {
      double lam = rng.log_uniform(0.25, 4.0);
      std::vector<double> xl = x;
      for (double& v : xl) v *= lam;
      if (std::fabs(evaluate_mean(m, xl) - lam * M) > 1e-10 * std::max(1.0, lam * scale)) {
        ctx.fail(homogeneous_flag, "homogeneous", x, xl);
        rep.homogeneous = false;
      }
    }

    // midpoint Jensen concavity
    if (rep.jensen_concave_sampled) {
      std::vector<double> u(dim), mid(dim);
      for (int i = 0; i < dim; ++i) {
        u[i] = rng.log_uniform(1e-3, 1e3);
        mid[i] = 0.5 * (x[i] + u[i]);
      }
      double Mu = evaluate_mean(m, u);
      double Mm = evaluate_mean(m, mid);
      double sc = std::max({1.0, std::fabs(M), std::fabs(Mu)});
      if (Mm < 0.5 * (M + Mu) - 1e-9 * sc) {
        ctx.fail(rep.jensen_concave_sampled, "jensen_concave_sampled", x, u);
      }
    }
  }
  return rep;
}

}  // namespace hm
