// SPDX-License-Identifier: Apache-2.0
#include "core/json_io.hpp"

#include <cmath>

namespace hm {

using nlohmann::json;

json json_extended(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json to_json(const LimitEstimate& e) {
  json terms = json::array();
  for (const auto& [n, a] : e.raw_terms) terms.push_back({n, a});
  json history = json::array();
  for (double h : e.history) history.push_back(h);
  return json{{"kind", "limit"},
              {"raw_terms", terms},
              {"extrapolated", e.extrapolated},
              {"converged", e.converged},
              {"fitted_decay_exponent", json_extended(e.fitted_decay_exponent)},
              {"history", history}};
}

json to_json(const IntegralResult& r) {
  return json{{"kind", "integral"},
              {"status", to_string(r.status)},
              {"value", r.status == IntegralStatus::Converged ? json(r.value) : json(nullptr)},
              {"tail_bound", r.tail_bound},
              {"evaluations", r.evaluations}};
}

json to_json(const ShapeReport& r) {
  return json{{"kind", "shape"},
              {"f2_sign", to_string(r.f2_sign)},
              {"ratio_convex", r.ratio_convex},
              {"ratio_negative", r.ratio_negative},
              {"kappa_decreasing", r.kappa_decreasing},
              {"kappa_limit_at_zero", json_extended(r.kappa_limit_at_zero)},
              {"kappa_limit_exists", r.kappa_limit_exists},
              {"kappa_global_inf", r.kappa_global_inf},
              {"kappa_global_sup", r.kappa_global_sup},
              {"qa_concave_eligible", r.qa_concave_eligible},
              {"deviation_concave_eligible", r.deviation_concave_eligible},
              {"grid", r.grid},
              {"kappa_values", r.kappa_values}};
}

json to_json(const PropertyReport& r) {
  auto ce = [](const Counterexample& c) {
    json j{{"property", c.property}, {"x", c.x}};
    if (!c.u.empty()) j["u"] = c.u;
    return j;
  };
  json counterexamples = json::array();
  for (const auto& c : r.counterexamples) counterexamples.push_back(ce(c));
  return json{{"symmetric", r.symmetric},
              {"repetition_invariant", r.repetition_invariant},
              {"monotone", r.monotone},
              {"internal", r.internal},
              {"homogeneous", r.homogeneous ? json(*r.homogeneous) : json(nullptr)},
              {"jensen_concave_sampled", r.jensen_concave_sampled},
              {"counterexample", r.counterexample ? ce(*r.counterexample) : json(nullptr)},
              {"counterexamples", counterexamples}};
}

json to_json(const HardyEstimate& e) {
  json j;
  j["constant"] = e.constant ? json_extended(*e.constant) : json(nullptr);
  j["method"] = to_string(e.method);
  if (e.interval) {
    j["interval"] = json::array({json_extended(e.interval->first),
                                 json_extended(e.interval->second)});
  } else {
    j["interval"] = nullptr;
  }
  j["caveats"] = e.caveats;
  if (e.limit_diag) j["diagnostics"] = to_json(*e.limit_diag);
  else if (e.integral_diag) j["diagnostics"] = to_json(*e.integral_diag);
  else if (e.shape_diag) j["diagnostics"] = to_json(*e.shape_diag);
  else j["diagnostics"] = nullptr;
  return j;
}

json to_json(const VerificationReport& r) {
  json steps = nullptr;
  if (!r.per_step_ratios.empty()) {
    steps = json::array();
    for (const auto& [n, ratio] : r.per_step_ratios) steps.push_back({n, ratio});
  }
  return json{{"N", r.N},
              {"partial_mean_sum", r.partial_mean_sum},
              {"partial_x_sum", r.partial_x_sum},
              {"ratio", r.ratio},
              {"bound", json_extended(r.bound)},
              {"satisfied", r.satisfied},
              {"per_step_ratios", steps},
              {"summable", r.summable ? json(*r.summable) : json(nullptr)}};
}

}  // namespace hm
