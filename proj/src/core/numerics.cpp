// SPDX-License-Identifier: Apache-2.0
#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hm {

namespace {

double checked_eval(const Fn1& fn, double x) {
  double v = fn(x);
  if (!std::isfinite(v)) {
    throw Error(errc::non_finite, "function value is not finite at x = " + std::to_string(x));
  }
  return v;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(errc::invalid_argument, "interval requires finite lo < hi");
  }
}

const char* to_string(IntegralStatus s) {
  switch (s) {
    case IntegralStatus::Converged: return "Converged";
    case IntegralStatus::Diverged: return "Diverged";
    case IntegralStatus::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

double find_root_monotone(const Fn1& fn, Interval bracket, double tol) {
  if (!(tol > 0.0)) throw Error(errc::invalid_argument, "tol must be positive");
  double a = bracket.lo, b = bracket.hi;
  double fa = checked_eval(fn, a);
  double fb = checked_eval(fn, b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (sign_of(fa) == sign_of(fb)) {
    throw Error(errc::bracket_invalid,
                "fn has the same sign at both endpoints of [" + std::to_string(a) + ", " +
                    std::to_string(b) + "]");
  }

  // Brent: b is the current best iterate, c the counterpoint with opposite sign.
  double c = a, fc = fa;
  double d = b - a, e = d;
  const int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol * std::max(1.0, std::fabs(b));
    double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double s = fb / fa, p, q2;
      if (a == c) {
        p = 2.0 * xm * s;
        q2 = 1.0 - s;
      } else {
        double q1 = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * q1 * (q1 - r) - (b - a) * (r - 1.0));
        q2 = (q1 - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q2 = -q2;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q2 - std::fabs(tol1 * q2), std::fabs(e * q2))) {
        e = d;
        d = p / q2;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = checked_eval(fn, b);
    if (sign_of(fb) == sign_of(fc)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

namespace {

struct QuadCtx {
  const Fn1& fn;
  std::int64_t evals = 0;
  std::int64_t budget = -1;  // negative: unlimited

  double eval(double x) {
    if (budget >= 0 && evals >= budget) {
      throw Error(errc::invalid_argument, "quadrature evaluation budget exhausted");
    }
    ++evals;
    return checked_eval(fn, x);
  }
};

double adaptive_simpson(QuadCtx& ctx, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = ctx.eval(lm), frm = ctx.eval(rm);
  double h = 0.5 * (b - a);
  double left = (h / 6.0) * (fa + 4.0 * flm + fm);
  double right = (h / 6.0) * (fm + 4.0 * frm + fb);
  double s2 = left + right;
  double err = s2 - whole;
  // error target floored at round-off scale
  double floor_tol = 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(s2);
  if (depth <= 0 || std::fabs(err) <= 15.0 * std::max(tol, floor_tol)) {
    return s2 + err / 15.0;
  }
  return adaptive_simpson(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_with_ctx(QuadCtx& ctx, double a, double b, double tol) {
  if (a == b) return 0.0;
  double fa = ctx.eval(a);
  double fb = ctx.eval(b);
  double m = 0.5 * (a + b);
  double fm = ctx.eval(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(ctx, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double integrate_finite(const Fn1& fn, double a, double b, double tol,
                        std::int64_t* eval_counter, std::int64_t eval_budget) {
  if (!(a <= b)) throw Error(errc::invalid_argument, "integrate_finite requires a <= b");
  if (!(tol > 0.0)) throw Error(errc::invalid_argument, "tol must be positive");
  QuadCtx ctx{fn, 0, eval_budget};
  double v = integrate_with_ctx(ctx, a, b, tol);
  if (eval_counter) *eval_counter += ctx.evals;
  return v;
}

IntegralResult integrate_unit_improper(const Fn1& fstar, double tol, std::int64_t budget) {
  if (!(tol > 0.0)) throw Error(errc::invalid_argument, "tol must be positive");
  // u = 1/t maps (0,1] to [1,inf); integrand fstar(1/u)/u^2
  Fn1 g = [&fstar](double u) { return fstar(1.0 / u) / (u * u); };

  IntegralResult res;
  QuadCtx ctx{g, 0, budget};
  const int max_doublings = 200;
  double total = 0.0;
  double prev_increment = std::numeric_limits<double>::quiet_NaN();
  int non_decreasing_streak = 0;

  try {
    for (int k = 0; k < max_doublings; ++k) {
      double a = std::ldexp(1.0, k);
      double b = std::ldexp(1.0, k + 1);
      // distribute the tolerance geometrically across segments
      double seg_tol = tol * std::ldexp(1.0, -(k + 3));
      double inc = integrate_with_ctx(ctx, a, b, std::max(seg_tol, 1e-16 * tol));
      total += inc;
      res.evaluations = ctx.evals;

      if (!std::isnan(prev_increment)) {
        if (std::fabs(inc) > std::fabs(prev_increment) / 1.1) {
          ++non_decreasing_streak;
        } else {
          non_decreasing_streak = 0;
        }
        if (non_decreasing_streak >= 5) {
          res.status = IntegralStatus::Diverged;
          return res;
        }
        // geometric tail certificate
        if (std::fabs(prev_increment) > 0.0) {
          double r = std::fabs(inc) / std::fabs(prev_increment);
          if (r < 0.9) {
            double tail = std::fabs(inc) * r / (1.0 - r);
            if (tail <= tol) {
              res.status = IntegralStatus::Converged;
              res.value = total;
              res.tail_bound = tail;
              return res;
            }
          }
        } else if (std::fabs(inc) == 0.0 && k >= 2) {
          res.status = IntegralStatus::Converged;
          res.value = total;
          res.tail_bound = 0.0;
          return res;
        }
      }
      prev_increment = inc;
    }
  } catch (const Error& e) {
    if (e.code() == errc::non_finite) throw;
    // budget exhausted mid-segment
    res.evaluations = ctx.evals;
    res.status = IntegralStatus::Inconclusive;
    return res;
  }
  res.status = IntegralStatus::Inconclusive;
  return res;
}

LimitEstimate extrapolate_limit(const std::vector<std::pair<double, double>>& terms,
                                double tol) {
  if (terms.size() < 4) {
    throw Error(errc::insufficient_samples,
                "extrapolation needs >= 4 geometric samples, got " + std::to_string(terms.size()));
  }
  LimitEstimate est;
  est.raw_terms = terms;

  double alpha = std::numeric_limits<double>::infinity();
  bool last_window_decaying = true;
  for (std::size_t j = 2; j < terms.size(); ++j) {
    double x1 = terms[j - 2].second, x2 = terms[j - 1].second, x3 = terms[j].second;
    double d1 = x2 - x1, d2 = x3 - x2;
    double L;
    double scale = std::max({std::fabs(x1), std::fabs(x2), std::fabs(x3), 1.0});
    double rho = terms[j].first / terms[j - 1].first;
    if (std::fabs(d2) <= 1e-15 * scale) {
      // tail already flat to round-off
      L = x3;
      alpha = std::numeric_limits<double>::infinity();
      last_window_decaying = true;
    } else if (std::fabs(d2) >= std::fabs(d1) * (1.0 - 1e-12)) {
      // constant or growing increments: outside the decay model
      L = x3;
      if (d1 != 0.0 && rho > 1.0) alpha = std::log(std::fabs(d1 / d2)) / std::log(rho);
      last_window_decaying = false;
    } else {
      L = x3 - d2 * d2 / (d2 - d1);
      if (rho > 1.0) alpha = std::log(std::fabs(d1 / d2)) / std::log(rho);
      last_window_decaying = true;
    }
    est.history.push_back(L);
  }

  est.extrapolated = est.history.back();
  est.fitted_decay_exponent = alpha;
  std::size_t h = est.history.size();
  if (h >= 2) {
    double delta = std::fabs(est.history[h - 1] - est.history[h - 2]);
    est.converged =
        last_window_decaying && std::isfinite(est.extrapolated) && delta <= tol;
  }
  return est;
}

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace hm
