// SPDX-License-Identifier: Apache-2.0
#include "core/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Streaming prefix-mean evaluator. Closed-form families update in O(1) and
// read the mean in O(1); quasi-arithmetic keeps a running f-sum and solves on
// demand; deviation families keep the prefix and solve from scratch.
class PrefixMean {
 public:
  explicit PrefixMean(const MeanSpec& m) : m_(m) {
    switch (m_.family()) {
      case MeanFamily::Power:
      case MeanFamily::Gini: mode_ = Mode::ClosedForm; break;
      case MeanFamily::QuasiArithmetic: mode_ = Mode::RunningSum; break;
      default: mode_ = Mode::Stored; break;
    }
  }

  void push(double x) {
    ++n_;
    double lx = std::log(x);
    run_min_ = std::min(run_min_, x);
    run_max_ = std::max(run_max_, x);
    switch (mode_) {
      case Mode::ClosedForm:
        if (m_.family() == MeanFamily::Power) {
          double p = m_.p();
          if (p == 0.0) {
            sum_log_ += lx;
          } else if (std::isfinite(p)) {
            ls_p_ = logaddexp(ls_p_, p * lx);
          }
        } else {  // Gini
          double p = m_.p(), q = m_.q();
          if (p == q) {
            double e = p * lx;
            double nls = logaddexp(ls_p_, e);
            t_norm_ = t_norm_ * std::exp(ls_p_ - nls) + lx * std::exp(e - nls);
            ls_p_ = nls;
          } else {
            ls_p_ = logaddexp(ls_p_, p * lx);
            ls_q_ = logaddexp(ls_q_, q * lx);
          }
        }
        break;
      case Mode::RunningSum: {
        double v = m_.generator().f(x);
        if (!std::isfinite(v)) {
          throw Error(errc::domain_error, "generator non-finite at prefix entry");
        }
        sum_f_ += v;
        break;
      }
      case Mode::Stored: xs_.push_back(x); break;
    }
  }

  double mean() const {
    double n = static_cast<double>(n_);
    switch (mode_) {
      case Mode::ClosedForm:
        if (m_.family() == MeanFamily::Power) {
          double p = m_.p();
          if (p == kInf) return run_max_;
          if (p == -kInf) return run_min_;
          if (p == 0.0) return std::exp(sum_log_ / n);
          return std::exp((ls_p_ - std::log(n)) / p);
        } else {
          double p = m_.p(), q = m_.q();
          if (p == q) return std::exp(t_norm_);
          return std::exp((ls_p_ - ls_q_) / (p - q));
        }
      case Mode::RunningSum: {
        if (run_min_ == run_max_) return run_min_;
        const Generator& g = m_.generator();
        double target = sum_f_ / n;
        auto fn = [&](double y) { return g.f(y) - target; };
        try {
          return find_root_monotone(fn, Interval(run_min_, run_max_));
        } catch (const Error& e) {
          if (e.code() != errc::bracket_invalid) throw;
          return std::fabs(fn(run_min_)) <= std::fabs(fn(run_max_)) ? run_min_ : run_max_;
        }
      }
      case Mode::Stored: return evaluate_mean(m_, xs_);
    }
    return 0.0;
  }

  std::int64_t count() const { return n_; }

 private:
  enum class Mode { ClosedForm, RunningSum, Stored };
  const MeanSpec& m_;
  Mode mode_;
  std::int64_t n_ = 0;
  double ls_p_ = -kInf, ls_q_ = -kInf;
  double t_norm_ = 0.0;
  double sum_log_ = 0.0;
  double sum_f_ = 0.0;
  double run_min_ = kInf, run_max_ = -kInf;
  std::vector<double> xs_;
};

std::vector<std::int64_t> geometric_samples(std::int64_t n_max, std::int64_t n_min,
                                            std::size_t max_count) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = n_max; n >= n_min && ns.size() < max_count; n /= 2) ns.push_back(n);
  std::reverse(ns.begin(), ns.end());
  return ns;
}

void append_property_caveats(const MeanSpec& m, std::vector<std::string>& caveats) {
  PropertyReport pr = check_mean_properties(m, 0x5EED, 8);
  auto warn = [&](bool ok, const char* name) {
    if (!ok) caveats.push_back(std::string("property check failed (sampled): ") + name);
  };
  warn(pr.monotone, "increasing");
  warn(pr.symmetric, "symmetric");
  warn(pr.repetition_invariant, "repetition invariant");
  warn(pr.jensen_concave_sampled, "Jensen concave");
  if (pr.homogeneous.has_value()) {
    warn(*pr.homogeneous, "homogeneous");
  } else {
    caveats.push_back("family is not homogeneous by construction; the n*M(1,...,1/n) "
                      "limit form assumes homogeneity");
  }
}

}  // namespace

double hardy_power_constant(double p) {
  if (std::isnan(p)) throw Error(errc::invalid_argument, "p is NaN");
  if (p == -kInf) return 1.0;
  if (p >= 1.0) return kInf;
  if (p == 0.0) return std::numbers::e;
  return std::pow(1.0 - p, -1.0 / p);
}

const char* to_string(HardyMethod m) {
  switch (m) {
    case HardyMethod::ClosedFormPower: return "ClosedFormPower";
    case HardyMethod::ClosedFormGini: return "ClosedFormGini";
    case HardyMethod::LimitExtrapolation: return "LimitExtrapolation";
    case HardyMethod::IntegralEquation: return "IntegralEquation";
    case HardyMethod::KappaBoundsInterval: return "KappaBoundsInterval";
  }
  return "Unknown";
}

HardyEstimate gini_hardy_constant(double p, double q) {
  HardyEstimate est;
  est.method = HardyMethod::ClosedFormGini;
  if (!(std::min(p, q) <= 0.0 && 0.0 <= std::max(p, q) && std::max(p, q) <= 1.0)) {
    est.caveats.push_back("corollary hypotheses violated: requires min(p,q) <= 0 <= max(p,q) <= 1 "
                          "(mean not increasing and concave)");
    return est;
  }
  if (std::max(p, q) >= 1.0) {
    est.constant = kInf;
    est.caveats.push_back("max(p,q) >= 1: not a Hardy mean");
    return est;
  }
  est.constant = (p == q) ? std::numbers::e : std::pow((1.0 - p) / (1.0 - q), 1.0 / (q - p));
  return est;
}

HardyEstimate hardy_limit_estimate(const MeanSpec& m, std::int64_t n_max, double tol) {
  if (n_max < 64) throw Error(errc::invalid_argument, "n_max must be >= 64");
  HardyEstimate est;
  est.method = HardyMethod::LimitExtrapolation;
  append_property_caveats(m, est.caveats);

  std::vector<std::int64_t> ns = geometric_samples(n_max, 8, 12);
  std::vector<std::pair<double, double>> terms;
  terms.reserve(ns.size());

  if (m.family() == MeanFamily::Power && !std::isfinite(m.p())) {
    // min of (1, 1/2, ..., 1/n) is 1/n and max is 1, exactly
    for (std::int64_t n : ns) {
      double a = (m.p() == -kInf) ? 1.0 : static_cast<double>(n);
      terms.emplace_back(static_cast<double>(n), a);
    }
  } else {
    PrefixMean acc(m);
    std::size_t next = 0;
    for (std::int64_t k = 1; k <= n_max && next < ns.size(); ++k) {
      acc.push(1.0 / static_cast<double>(k));
      if (k == ns[next]) {
        terms.emplace_back(static_cast<double>(k), static_cast<double>(k) * acc.mean());
        ++next;
      }
    }
  }

  LimitEstimate le = extrapolate_limit(terms, tol);
  est.limit_diag = le;
  if (le.converged) {
    est.constant = le.extrapolated;
    return est;
  }

  // non-convergent: classify growth from the raw increments
  std::vector<double> ratios;
  for (std::size_t j = 2; j < terms.size(); ++j) {
    double d1 = terms[j - 1].second - terms[j - 2].second;
    double d2 = terms[j].second - terms[j - 1].second;
    if (d1 != 0.0) ratios.push_back(std::fabs(d2) / std::fabs(d1));
  }
  double tail_ratio = 0.0;
  if (ratios.size() >= 3) {
    std::vector<double> tail(ratios.end() - 3, ratios.end());
    std::sort(tail.begin(), tail.end());
    tail_ratio = tail[1];  // median of the last three
  }
  if (tail_ratio >= 1.05) {
    est.constant = kInf;
    est.caveats.push_back("sample increments grow geometrically: the partial means diverge; "
                          "not a Hardy mean by this probe");
  } else if (tail_ratio > 0.99) {
    // near-constant differences: outside the decay model, report raw
    est.constant = terms.back().second;
    est.caveats.push_back("increments barely decay (near-constant differences); reporting the "
                          "last raw sample, the limit may not exist or sit far above it");
  } else {
    est.constant = le.extrapolated;
    est.caveats.push_back("extrapolation did not converge within tolerance; constant is the "
                          "best available estimate");
  }
  return est;
}

HardyEstimate hardy_lower_bound(const MeanSpec& m, std::span<const double> ys,
                                std::int64_t n_max) {
  if (ys.empty()) throw Error(errc::invalid_argument, "ys must be non-empty");
  for (double y : ys) {
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw Error(errc::non_positive_entry, "ys entries must be positive");
    }
  }
  if (n_max < 8) throw Error(errc::invalid_argument, "n_max must be >= 8");

  std::vector<std::int64_t> ns = geometric_samples(n_max, std::max<std::int64_t>(1, n_max / 8), 4);

  HardyEstimate est;
  est.method = HardyMethod::LimitExtrapolation;
  double best = -kInf;
  std::vector<std::pair<double, double>> best_terms;
  for (double y : ys) {
    PrefixMean acc(m);
    std::size_t next = 0;
    double lb = kInf;
    std::vector<std::pair<double, double>> terms;
    for (std::int64_t k = 1; k <= n_max && next < ns.size(); ++k) {
      acc.push(y / static_cast<double>(k));
      if (k == ns[next]) {
        double b = static_cast<double>(k) / y * acc.mean();
        terms.emplace_back(static_cast<double>(k), b);
        lb = std::min(lb, b);
        ++next;
      }
    }
    if (lb > best) {
      best = lb;
      best_terms = std::move(terms);
    }
  }
  est.constant = best;
  LimitEstimate diag;
  diag.raw_terms = std::move(best_terms);
  diag.extrapolated = best;
  diag.converged = false;
  est.limit_diag = std::move(diag);
  est.caveats.push_back("lower bound: liminf surrogate (minimum over geometric tail samples in "
                        "[n_max/8, n_max])");
  est.caveats.push_back("supremum over y sampled only at the provided grid");
  return est;
}

HardyEstimate hardy_deviation_constant(const Generator& f, double quad_tol, double root_tol) {
  if (std::fabs(f.f(1.0)) > 1e-12) {
    throw Error(errc::invalid_argument, "deviation generator requires f(1) = 0");
  }
  if (!f.increasing()) {
    throw Error(errc::invalid_argument, "deviation generator must be strictly increasing");
  }

  HardyEstimate est;
  est.method = HardyMethod::IntegralEquation;

  // sampled concavity of f (hypothesis of the integral criterion)
  {
    bool concave = true;
    double lo = f.domain().lo, hi = f.domain().hi;
    for (int i = 0; i < 48 && concave; ++i) {
      double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 47.0);
      double d2 = f.f2(x);
      if (d2 > 1e-12 * std::max(1.0, std::fabs(f.f1(x)) / x)) concave = false;
    }
    if (!concave) {
      est.caveats.push_back("f is not concave on the sampled grid: integral-criterion "
                            "hypotheses violated, result may be meaningless");
    }
  }

  auto fstar = [&f](double t) { return f.f(1.0 / t); };
  IntegralResult head = integrate_unit_improper(fstar, quad_tol);
  est.integral_diag = head;

  if (head.status == IntegralStatus::Diverged) {
    est.constant = kInf;
    est.caveats.push_back("integral of f(1/t) over (0,1] diverges: condition (HC) fails, "
                          "not a Hardy mean");
    return est;
  }
  if (head.status == IntegralStatus::Inconclusive) {
    est.caveats.push_back("improper integral inconclusive within the evaluation budget; "
                          "no constant reported");
    return est;
  }

  const double head_value = head.value;
  auto F = [&](double c) {
    return head_value + integrate_finite(fstar, 1.0, c, quad_tol);
  };

  double lo = 1.0, hi = 2.0;
  double f_hi = F(hi);
  while (f_hi >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1.8446744073709552e19) {  // 2^64
      throw Error(errc::bracket_cap,
                  "F stayed positive up to c = 2^64: numerically inconsistent with a "
                  "convergent head integral");
    }
    f_hi = F(hi);
  }
  est.constant = find_root_monotone(F, Interval(lo, hi), root_tol);
  return est;
}

HardyEstimate qa_hardy_analysis(const Generator& g, const GridSpec& grid, double tol) {
  ShapeReport sr = shape_report(g, grid);
  HardyEstimate est;

  const double p_lim = sr.kappa_limit_at_zero;
  const bool limit_exists = sr.kappa_limit_exists;
  const double ksup = sr.kappa_global_sup;
  const double kinf = sr.kappa_global_inf;

  auto finish_point = [&](double p, const char* route) {
    est.method = HardyMethod::ClosedFormPower;
    double c = hardy_power_constant(p);
    est.constant = c;
    est.caveats.push_back(route);
    if (c == kInf) est.caveats.push_back("kappa limit >= 1: not a Hardy mean");
  };

  if (limit_exists && ksup <= p_lim + tol) {
    finish_point(p_lim, "kappa admits its limit at 0+ as a global upper bound; the Hardy "
                        "constant is C(limit)");
  } else if (sr.qa_concave_eligible && sr.f2_sign != SecondDerivSign::AllZero) {
    est.method = HardyMethod::ClosedFormPower;
    double c = hardy_power_constant(p_lim);
    est.constant = c;
    est.caveats.push_back("f'/f'' convex and negative: kappa is decreasing and its limit at 0+ "
                          "is the supremum; the Hardy constant is C(limit)");
    if (!limit_exists) {
      est.caveats.push_back("kappa limit extrapolation did not fully converge; constant uses "
                            "the best available estimate");
    }
    if (c == kInf) est.caveats.push_back("kappa limit >= 1: not a Hardy mean");
  } else {
    est.method = HardyMethod::KappaBoundsInterval;
    double lo = hardy_power_constant(kinf);
    double hi = hardy_power_constant(ksup);
    est.interval = std::make_pair(lo, hi);
    est.constant = hi;
    est.caveats.push_back("kappa range only: the Hardy constant lies in [C(inf kappa), "
                          "C(sup kappa)]; the constant field reports the upper bound");
    if (!limit_exists) {
      est.caveats.push_back("kappa limit at 0+ did not stabilize; inf/sup taken over the grid "
                            "and 0+ tail samples (liminf/limsup surrogate)");
    }
  }
  est.shape_diag = std::move(sr);
  return est;
}

SequenceSpec SequenceSpec::harmonic(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw Error(errc::invalid_argument, "harmonic needs y > 0");
  return SequenceSpec{Kind::Harmonic, y, {}};
}

SequenceSpec SequenceSpec::power_law(double s) {
  if (!std::isfinite(s)) throw Error(errc::invalid_argument, "power law needs finite s");
  return SequenceSpec{Kind::PowerLaw, s, {}};
}

SequenceSpec SequenceSpec::geometric(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(errc::invalid_argument, "geometric needs r > 0");
  return SequenceSpec{Kind::Geometric, r, {}};
}

SequenceSpec SequenceSpec::custom_terms(std::vector<double> terms) {
  if (terms.empty()) throw Error(errc::empty_input, "custom sequence is empty");
  for (double t : terms) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(errc::non_positive_entry, "custom sequence terms must be positive");
    }
  }
  return SequenceSpec{Kind::Custom, 0.0, std::move(terms)};
}

double SequenceSpec::term(std::int64_t n) const {
  switch (kind) {
    case Kind::Harmonic: return param / static_cast<double>(n);
    case Kind::PowerLaw: return std::pow(static_cast<double>(n), -param);
    case Kind::Geometric: {
      double v = std::exp(static_cast<double>(n) * std::log(param));
      return std::clamp(v, 1e-300, 1e300);
    }
    case Kind::Custom:
      if (n < 1 || n > static_cast<std::int64_t>(custom.size())) {
        throw Error(errc::invalid_argument, "custom sequence has no term at n = " +
                                                std::to_string(n));
      }
      return custom[static_cast<std::size_t>(n - 1)];
  }
  throw Error(errc::invalid_argument, "unknown sequence kind");
}

std::optional<bool> SequenceSpec::summable() const {
  switch (kind) {
    case Kind::Harmonic: return false;
    case Kind::PowerLaw: return param > 1.0;
    case Kind::Geometric: return param < 1.0;
    case Kind::Custom: return std::nullopt;
  }
  return std::nullopt;
}

std::string SequenceSpec::describe() const {
  switch (kind) {
    case Kind::Harmonic: return "harmonic(y=" + std::to_string(param) + ")";
    case Kind::PowerLaw: return "powerlaw(s=" + std::to_string(param) + ")";
    case Kind::Geometric: return "geometric(r=" + std::to_string(param) + ")";
    case Kind::Custom: return "custom(" + std::to_string(custom.size()) + " terms)";
  }
  return "?";
}

VerificationReport verify_hardy_inequality(const MeanSpec& m, const SequenceSpec& seq,
                                           std::int64_t N, double bound, bool per_step) {
  if (N < 1) throw Error(errc::invalid_argument, "N must be >= 1");
  if (std::isnan(bound)) throw Error(errc::invalid_argument, "bound is NaN");

  VerificationReport rep;
  rep.N = N;
  rep.bound = bound;
  rep.summable = seq.summable();

  PrefixMean acc(m);
  double sum_means = 0.0, sum_x = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    double x = seq.term(n);
    acc.push(x);
    sum_means += acc.mean();
    sum_x += x;
    if (per_step && (N <= 1024 || (n & (n - 1)) == 0 || n == N)) {
      rep.per_step_ratios.emplace_back(n, sum_means / sum_x);
    }
  }
  rep.partial_mean_sum = sum_means;
  rep.partial_x_sum = sum_x;
  rep.ratio = sum_means / sum_x;
  rep.satisfied = (bound == kInf) || (rep.ratio <= bound + 1e-9);
  return rep;
}

}  // namespace hm
