// SPDX-License-Identifier: Apache-2.0
#include "core/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hm {

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> xs(count);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    xs[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

}  // namespace

Generator Generator::from_expression(ExprPtr f, Interval domain, GeneratorTag tag, double p,
                                     double q) {
  if (domain.lo <= 0.0) {
    throw Error(errc::domain_error, "generator domain must be positive");
  }
  ExprPtr f1 = differentiate(f);
  ExprPtr f2 = differentiate(f1);

  const int samples = 64;
  std::vector<double> xs = log_grid(domain.lo, domain.hi, samples);
  double prev_f = 0.0;
  int monotone_dir = 0;
  int deriv_sign = 0;
  for (int i = 0; i < samples; ++i) {
    double x = xs[i];
    double v = evaluate(f, x);
    double d = evaluate(f1, x);
    double d2 = evaluate(f2, x);
    if (!std::isfinite(v) || !std::isfinite(d) || !std::isfinite(d2)) {
      throw Error(errc::non_finite, "generator or derivative non-finite at sampled x = " +
                                        std::to_string(x));
    }
    if (d == 0.0) {
      throw Error(errc::derivative_vanishes,
                  "f' vanishes at sampled x = " + std::to_string(x));
    }
    int ds = d > 0.0 ? 1 : -1;
    if (deriv_sign == 0) {
      deriv_sign = ds;
    } else if (ds != deriv_sign) {
      throw Error(errc::derivative_vanishes,
                  "f' changes sign near sampled x = " + std::to_string(x));
    }
    if (i > 0) {
      int dir = (v > prev_f) ? 1 : (v < prev_f ? -1 : 0);
      if (dir == 0 || (monotone_dir != 0 && dir != monotone_dir)) {
        throw Error(errc::domain_error,
                    "f is not strictly monotone on the sampled grid near x = " +
                        std::to_string(x));
      }
      monotone_dir = dir;
    }
    prev_f = v;
  }
  return Generator(std::move(f), std::move(f1), std::move(f2), domain, tag, p, q,
                   deriv_sign > 0);
}

Generator Generator::parse(const std::string& text, Interval domain) {
  return from_expression(parse_expression(text), domain, GeneratorTag::Custom);
}

Generator Generator::power(double p, Interval domain) {
  if (!std::isfinite(p)) throw Error(errc::invalid_argument, "power generator needs finite p");
  if (p == 0.0) return log(domain);
  return from_expression(make_pow(make_variable(), p), domain, GeneratorTag::Power, p, 0.0);
}

Generator Generator::log(Interval domain) {
  return from_expression(make_ln(make_variable()), domain, GeneratorTag::Log);
}

Generator Generator::gini_chi(double p, double q, Interval domain) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw Error(errc::invalid_argument, "gini_chi needs finite parameters");
  }
  ExprPtr x = make_variable();
  ExprPtr f;
  if (p == q) {
    // x^p ln(x); reduces to ln(x) when p = 0
    f = (p == 0.0) ? make_ln(x) : make_mul(make_pow(x, p), make_ln(x));
  } else {
    f = make_div(make_sub(make_pow(x, p), make_pow(x, q)), make_constant(p - q));
  }
  return from_expression(std::move(f), domain, GeneratorTag::GiniChi, p, q);
}

double Generator::kappa(double x) const {
  if (!(x >= domain_.lo && x <= domain_.hi)) {
    throw Error(errc::domain_error, "x = " + std::to_string(x) + " outside generator domain");
  }
  double d = f1(x);
  if (d == 0.0) throw Error(errc::derivative_vanishes, "f'(x) = 0 at x = " + std::to_string(x));
  return x * f2(x) / d + 1.0;
}

std::string Generator::describe() const {
  switch (tag_) {
    case GeneratorTag::Power: return "power(" + std::to_string(p_) + ")";
    case GeneratorTag::Log: return "log";
    case GeneratorTag::GiniChi:
      return "gini_chi(" + std::to_string(p_) + ", " + std::to_string(q_) + ")";
    case GeneratorTag::Custom: return print_expression(f_);
  }
  return "?";
}

const char* to_string(SecondDerivSign s) {
  switch (s) {
    case SecondDerivSign::AllZero: return "AllZero";
    case SecondDerivSign::AllNegative: return "AllNegative";
    case SecondDerivSign::AllPositive: return "AllPositive";
    case SecondDerivSign::Mixed: return "Mixed";
  }
  return "Unknown";
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::FLeqG: return "FLeqG";
    case Comparison::GLeqF: return "GLeqF";
    case Comparison::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

ShapeReport shape_report(const Generator& g, const GridSpec& grid, double extrap_tol) {
  if (grid.count < 16) throw Error(errc::invalid_argument, "grid count must be >= 16");
  if (!(grid.lo >= g.domain().lo && grid.hi <= g.domain().hi && grid.lo < grid.hi)) {
    throw Error(errc::domain_error, "grid must lie inside the generator domain");
  }

  ShapeReport rep;
  rep.grid = log_grid(grid.lo, grid.hi, grid.count);

  // second-derivative sign: scale-free threshold |x^2 f''| <= eps * max(1, |x f'|)
  int n_zero = 0, n_neg = 0, n_pos = 0;
  std::vector<double> f1v(rep.grid.size()), f2v(rep.grid.size());
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    double x = rep.grid[i];
    f1v[i] = g.f1(x);
    f2v[i] = g.f2(x);
    // zero iff |kappa(x) - 1| is at round-off scale, i.e. |x f''| << |f'|
    double mag = std::fabs(x * x * f2v[i]);
    if (mag <= 1e-12 * std::fabs(x * f1v[i])) {
      ++n_zero;
    } else if (f2v[i] < 0.0) {
      ++n_neg;
    } else {
      ++n_pos;
    }
  }
  std::size_t n = rep.grid.size();
  if (n_zero == static_cast<int>(n)) rep.f2_sign = SecondDerivSign::AllZero;
  else if (n_neg == static_cast<int>(n)) rep.f2_sign = SecondDerivSign::AllNegative;
  else if (n_pos == static_cast<int>(n)) rep.f2_sign = SecondDerivSign::AllPositive;
  else rep.f2_sign = SecondDerivSign::Mixed;

  // ratio f'/f'' shape, meaningful only when f'' keeps one strict sign
  if (rep.f2_sign == SecondDerivSign::AllNegative || rep.f2_sign == SecondDerivSign::AllPositive) {
    std::vector<double> r(n);
    bool neg = true;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = f1v[i] / f2v[i];
      if (!(r[i] < 0.0)) neg = false;
    }
    rep.ratio_negative = neg;
    bool convex = true;
    for (std::size_t i = 0; i < n && convex; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double xm = 0.5 * (rep.grid[i] + rep.grid[j]);
        double rm = g.f1(xm) / g.f2(xm);
        double chord = 0.5 * (r[i] + r[j]);
        if (rm > chord + 1e-9 * std::max(1.0, std::fabs(rm))) {
          convex = false;
          break;
        }
      }
    }
    rep.ratio_convex = convex;
  }

  // kappa on the grid
  rep.kappa_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.kappa_values[i] = g.kappa(rep.grid[i]);
  rep.kappa_decreasing = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (rep.kappa_values[i + 1] >
        rep.kappa_values[i] + 1e-9 * std::max(1.0, std::fabs(rep.kappa_values[i]))) {
      rep.kappa_decreasing = false;
      break;
    }
  }

  // kappa limit at 0+: probe x = lo * 2^-j and extrapolate against n_j = 2^j
  std::vector<std::pair<double, double>> tail;
  for (int j = 0; j < 26; ++j) {
    double x = grid.lo * std::ldexp(1.0, -j);
    double d = g.f1(x);
    if (!std::isfinite(d) || d == 0.0) break;
    double k = g.kappa_unchecked(x);
    if (!std::isfinite(k)) break;
    tail.emplace_back(std::ldexp(1.0, j), k);
  }

  double kinf = *std::min_element(rep.kappa_values.begin(), rep.kappa_values.end());
  double ksup = *std::max_element(rep.kappa_values.begin(), rep.kappa_values.end());
  for (const auto& [nj, kj] : tail) {
    kinf = std::min(kinf, kj);
    ksup = std::max(ksup, kj);
  }
  rep.kappa_global_inf = kinf;
  rep.kappa_global_sup = ksup;

  if (tail.size() >= 4) {
    rep.kappa_limit_diag = extrapolate_limit(tail, extrap_tol);
    rep.kappa_limit_at_zero = rep.kappa_limit_diag.extrapolated;
    rep.kappa_limit_exists = rep.kappa_limit_diag.converged;
    if (rep.kappa_limit_exists && std::isfinite(rep.kappa_limit_at_zero)) {
      // the 0+ limit belongs to the closure the inf/sup surrogates describe
      kinf = std::min(kinf, rep.kappa_limit_at_zero);
      ksup = std::max(ksup, rep.kappa_limit_at_zero);
      rep.kappa_global_inf = kinf;
      rep.kappa_global_sup = ksup;
    }
    if (!rep.kappa_limit_exists && tail.size() >= 4) {
      // monotone blow-up of kappa along the tail means the limit is +-inf
      std::size_t m = tail.size();
      double k1 = tail[m - 4].second, k2 = tail[m - 3].second, k3 = tail[m - 2].second,
             k4 = tail[m - 1].second;
      bool up = k1 < k2 && k2 < k3 && k3 < k4;
      bool down = k1 > k2 && k2 > k3 && k3 > k4;
      if (std::fabs(k4) > 1e6 && (up || down)) {
        rep.kappa_limit_at_zero = up ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
        rep.kappa_limit_exists = true;
      }
    }
  } else if (!tail.empty()) {
    rep.kappa_limit_at_zero = tail.back().second;
    rep.kappa_limit_exists = false;
  }

  rep.qa_concave_eligible =
      rep.f2_sign == SecondDerivSign::AllZero ||
      ((rep.f2_sign == SecondDerivSign::AllNegative ||
        rep.f2_sign == SecondDerivSign::AllPositive) &&
       rep.ratio_convex && rep.ratio_negative);
  rep.deviation_concave_eligible =
      g.increasing() && (rep.f2_sign == SecondDerivSign::AllZero ||
                         rep.f2_sign == SecondDerivSign::AllNegative);
  return rep;
}

Comparison compare_generators(const Generator& f, const Generator& g, const GridSpec& grid,
                              double tol) {
  double lo = std::max({grid.lo, f.domain().lo, g.domain().lo});
  double hi = std::min({grid.hi, f.domain().hi, g.domain().hi});
  if (!(lo < hi)) throw Error(errc::domain_error, "generators have no common grid overlap");
  int count = std::max(grid.count, 16);
  std::vector<double> xs = log_grid(lo, hi, count);

  bool f_le_g = true, g_le_f = true;
  for (double x : xs) {
    double kf = f.kappa(x), kg = g.kappa(x);
    if (kf > kg + tol) f_le_g = false;
    if (kg > kf + tol) g_le_f = false;
    if (!f_le_g && !g_le_f) return Comparison::Incomparable;
  }
  if (f_le_g) return Comparison::FLeqG;  // ties resolve to FLeqG
  return Comparison::GLeqF;
}

std::vector<std::pair<std::string, Generator>> catalog_generators() {
  std::vector<std::pair<std::string, Generator>> out;
  for (double p : {-2.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
    out.emplace_back("power(" + std::to_string(p) + ")", Generator::power(p));
  }
  out.emplace_back("log", Generator::log());
  out.emplace_back("affine", Generator::parse("x"));
  const double chi_params[][2] = {{0.5, -1.0}, {0.5, 0.0}, {0.25, -0.5}, {0.0, -1.0}, {0.75, -0.25}};
  for (const auto& pq : chi_params) {
    out.emplace_back("chi(" + std::to_string(pq[0]) + ", " + std::to_string(pq[1]) + ")",
                     Generator::gini_chi(pq[0], pq[1]));
  }
  out.emplace_back("2(sqrt-1)", Generator::parse("2*(sqrt(x) - 1)"));
  out.emplace_back("x-1/x", Generator::parse("x - 1/x"));
  return out;
}

}  // namespace hm
