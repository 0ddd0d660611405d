// SPDX-License-Identifier: Apache-2.0
#include "hardymeans.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "core/hardy.hpp"
#include "core/json_io.hpp"

using namespace hm;

struct hm_generator {
  Generator g;
};

struct hm_mean {
  MeanSpec m;
};

namespace {

thread_local std::string g_last_error;
thread_local long g_last_error_position = -1;

hm_status status_of(const Error& e) {
  switch (e.code()) {
    case errc::syntax_error: return HM_ERR_SYNTAX;
    case errc::non_constant_exponent: return HM_ERR_NON_CONSTANT_EXPONENT;
    case errc::domain_error: return HM_ERR_DOMAIN;
    case errc::derivative_vanishes: return HM_ERR_DERIVATIVE_VANISHES;
    case errc::bracket_invalid:
    case errc::bracket_failure:
    case errc::bracket_cap: return HM_ERR_BRACKET;
    case errc::non_finite: return HM_ERR_NON_FINITE;
    case errc::insufficient_samples: return HM_ERR_INSUFFICIENT_SAMPLES;
    case errc::empty_input: return HM_ERR_EMPTY_INPUT;
    case errc::non_positive_entry: return HM_ERR_NON_POSITIVE_ENTRY;
    case errc::invalid_argument: return HM_ERR_INVALID_ARGUMENT;
  }
  return HM_ERR_INTERNAL;
}

template <typename F>
hm_status guarded(F&& fn) {
  try {
    fn();
    return HM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    g_last_error_position = e.position();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    g_last_error_position = -1;
    return HM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    g_last_error_position = -1;
    return HM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dump_json(const nlohmann::json& j) { return dup_string(j.dump(2)); }

hm_status require(bool cond, const char* msg) {
  if (cond) return HM_OK;
  g_last_error = msg;
  g_last_error_position = -1;
  return HM_ERR_INVALID_ARGUMENT;
}

Interval domain_or_default(double lo, double hi) {
  if (lo < hi) return Interval(lo, hi);
  return Generator::default_domain();
}

}  // namespace

extern "C" {

const char* hm_version(void) { return "1.0.0"; }

const char* hm_status_name(hm_status s) {
  switch (s) {
    case HM_OK: return "HM_OK";
    case HM_ERR_SYNTAX: return "HM_ERR_SYNTAX";
    case HM_ERR_NON_CONSTANT_EXPONENT: return "HM_ERR_NON_CONSTANT_EXPONENT";
    case HM_ERR_DOMAIN: return "HM_ERR_DOMAIN";
    case HM_ERR_DERIVATIVE_VANISHES: return "HM_ERR_DERIVATIVE_VANISHES";
    case HM_ERR_BRACKET: return "HM_ERR_BRACKET";
    case HM_ERR_NON_FINITE: return "HM_ERR_NON_FINITE";
    case HM_ERR_INSUFFICIENT_SAMPLES: return "HM_ERR_INSUFFICIENT_SAMPLES";
    case HM_ERR_EMPTY_INPUT: return "HM_ERR_EMPTY_INPUT";
    case HM_ERR_NON_POSITIVE_ENTRY: return "HM_ERR_NON_POSITIVE_ENTRY";
    case HM_ERR_INVALID_ARGUMENT: return "HM_ERR_INVALID_ARGUMENT";
    case HM_ERR_INTERNAL: return "HM_ERR_INTERNAL";
  }
  return "HM_ERR_UNKNOWN";
}

const char* hm_last_error(void) { return g_last_error.c_str(); }

long hm_last_error_position(void) { return g_last_error_position; }

void hm_string_free(char* s) { delete[] s; }

hm_status hm_generator_parse(const char* text, double domain_lo, double domain_hi,
                             hm_generator** out) {
  if (hm_status s = require(text && out, "text and out must be non-null")) return s;
  return guarded([&] {
    *out = new hm_generator{Generator::parse(text, domain_or_default(domain_lo, domain_hi))};
  });
}

hm_status hm_generator_power(double p, hm_generator** out) {
  if (hm_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = new hm_generator{Generator::power(p)}; });
}

hm_status hm_generator_gini_chi(double p, double q, hm_generator** out) {
  if (hm_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = new hm_generator{Generator::gini_chi(p, q)}; });
}

void hm_generator_free(hm_generator* g) { delete g; }

hm_status hm_generator_eval(const hm_generator* g, int order, double x, double* out) {
  if (hm_status s = require(g && out, "generator and out must be non-null")) return s;
  if (hm_status s = require(order >= 0 && order <= 2, "order must be 0, 1 or 2")) return s;
  return guarded([&] {
    *out = order == 0 ? g->g.f(x) : (order == 1 ? g->g.f1(x) : g->g.f2(x));
  });
}

hm_status hm_generator_print(const hm_generator* g, int order, char** out) {
  if (hm_status s = require(g && out, "generator and out must be non-null")) return s;
  if (hm_status s = require(order >= 0 && order <= 2, "order must be 0, 1 or 2")) return s;
  return guarded([&] {
    const ExprPtr& e =
        order == 0 ? g->g.expr() : (order == 1 ? g->g.expr_d1() : g->g.expr_d2());
    *out = dup_string(print_expression(e));
  });
}

hm_status hm_generator_kappa(const hm_generator* g, double x, double* out) {
  if (hm_status s = require(g && out, "generator and out must be non-null")) return s;
  return guarded([&] { *out = g->g.kappa(x); });
}

hm_status hm_mean_power(double p, hm_mean** out) {
  if (hm_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = new hm_mean{MeanSpec::power(p)}; });
}

hm_status hm_mean_quasi_arithmetic(const hm_generator* g, hm_mean** out) {
  if (hm_status s = require(g && out, "generator and out must be non-null")) return s;
  return guarded([&] { *out = new hm_mean{MeanSpec::quasi_arithmetic(g->g)}; });
}

hm_status hm_mean_gini(double p, double q, hm_mean** out) {
  if (hm_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = new hm_mean{MeanSpec::gini(p, q)}; });
}

hm_status hm_mean_homogeneous_deviation(const hm_generator* f, hm_mean** out) {
  if (hm_status s = require(f && out, "generator and out must be non-null")) return s;
  return guarded([&] { *out = new hm_mean{MeanSpec::homogeneous_deviation(f->g)}; });
}

void hm_mean_free(hm_mean* m) { delete m; }

hm_status hm_mean_eval(const hm_mean* m, const double* xs, size_t n, double* out) {
  if (hm_status s = require(m && xs && out, "mean, xs and out must be non-null")) return s;
  return guarded([&] { *out = evaluate_mean(m->m, std::span<const double>(xs, n)); });
}

hm_status hm_mean_check_properties(const hm_mean* m, uint64_t seed, int trials,
                                   char** json_out) {
  if (hm_status s = require(m && json_out, "mean and json_out must be non-null")) return s;
  return guarded([&] { *json_out = dump_json(to_json(check_mean_properties(m->m, seed, trials))); });
}

hm_status hm_shape_report(const hm_generator* g, double lo, double hi, int count,
                          char** json_out) {
  if (hm_status s = require(g && json_out, "generator and json_out must be non-null")) return s;
  return guarded([&] {
    *json_out = dump_json(to_json(shape_report(g->g, GridSpec{lo, hi, count})));
  });
}

hm_status hm_compare_generators(const hm_generator* f, const hm_generator* g, double lo,
                                double hi, int count, int* verdict) {
  if (hm_status s = require(f && g && verdict, "generators and verdict must be non-null")) {
    return s;
  }
  return guarded([&] {
    *verdict = static_cast<int>(compare_generators(f->g, g->g, GridSpec{lo, hi, count}));
  });
}

hm_status hm_hardy_power_constant(double p, double* out) {
  if (hm_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = hardy_power_constant(p); });
}

hm_status hm_hardy_closed_form(const hm_mean* m, char** json_out) {
  if (hm_status s = require(m && json_out, "mean and json_out must be non-null")) return s;
  return guarded([&] {
    if (m->m.family() == MeanFamily::Power) {
      HardyEstimate est;
      est.method = HardyMethod::ClosedFormPower;
      est.constant = hardy_power_constant(m->m.p());
      *json_out = dump_json(to_json(est));
    } else if (m->m.family() == MeanFamily::Gini) {
      *json_out = dump_json(to_json(gini_hardy_constant(m->m.p(), m->m.q())));
    } else {
      throw Error(errc::invalid_argument,
                  "closed forms exist only for power and Gini means");
    }
  });
}

hm_status hm_hardy_limit(const hm_mean* m, int64_t n_max, double tol, char** json_out) {
  if (hm_status s = require(m && json_out, "mean and json_out must be non-null")) return s;
  return guarded([&] {
    double t = tol > 0.0 ? tol : kExtrapTol;
    *json_out = dump_json(to_json(hardy_limit_estimate(m->m, n_max, t)));
  });
}

hm_status hm_hardy_integral(const hm_generator* f, char** json_out) {
  if (hm_status s = require(f && json_out, "generator and json_out must be non-null")) return s;
  return guarded([&] { *json_out = dump_json(to_json(hardy_deviation_constant(f->g))); });
}

hm_status hm_hardy_kappa_analysis(const hm_generator* g, char** json_out) {
  if (hm_status s = require(g && json_out, "generator and json_out must be non-null")) return s;
  return guarded([&] {
    // clamp the analysis grid into narrow generator domains
    GridSpec grid;
    grid.lo = std::max(grid.lo, g->g.domain().lo);
    grid.hi = std::min(grid.hi, g->g.domain().hi);
    if (!(grid.lo < grid.hi)) {
      grid.lo = g->g.domain().lo;
      grid.hi = g->g.domain().hi;
    }
    *json_out = dump_json(to_json(qa_hardy_analysis(g->g, grid)));
  });
}

hm_status hm_hardy_lower_bound(const hm_mean* m, const double* ys, size_t n_ys, int64_t n_max,
                               char** json_out) {
  if (hm_status s = require(m && ys && json_out, "mean, ys and json_out must be non-null")) {
    return s;
  }
  return guarded([&] {
    *json_out = dump_json(to_json(hardy_lower_bound(m->m, std::span<const double>(ys, n_ys),
                                                    n_max)));
  });
}

hm_status hm_verify_hardy(const hm_mean* m, const char* seq_kind, double seq_param,
                          const double* terms, size_t n_terms, int64_t N, double bound,
                          int per_step, char** json_out) {
  if (hm_status s = require(m && seq_kind && json_out,
                            "mean, seq_kind and json_out must be non-null")) {
    return s;
  }
  return guarded([&] {
    std::string kind = seq_kind;
    SequenceSpec seq = SequenceSpec::harmonic(1.0);
    if (kind == "harmonic") {
      seq = SequenceSpec::harmonic(seq_param);
    } else if (kind == "powerlaw") {
      seq = SequenceSpec::power_law(seq_param);
    } else if (kind == "geometric") {
      seq = SequenceSpec::geometric(seq_param);
    } else if (kind == "custom") {
      if (!terms || n_terms == 0) {
        throw Error(errc::empty_input, "custom sequence needs terms");
      }
      seq = SequenceSpec::custom_terms(std::vector<double>(terms, terms + n_terms));
    } else {
      throw Error(errc::invalid_argument, "unknown sequence kind '" + kind + "'");
    }
    *json_out = dump_json(to_json(verify_hardy_inequality(m->m, seq, N, bound, per_step != 0)));
  });
}

}  // extern "C"
