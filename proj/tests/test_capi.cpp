#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include <json.hpp>

#include "hardymeans.h"

using nlohmann::json;

namespace {

json parse_and_free(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(std::string(s));
  hm_string_free(s);
  return j;
}

struct GenHandle {
  hm_generator* g = nullptr;
  ~GenHandle() { hm_generator_free(g); }
};

struct MeanHandle {
  hm_mean* m = nullptr;
  ~MeanHandle() { hm_mean_free(m); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strcmp(hm_version(), "1.0.0") == 0);
  CHECK(std::strcmp(hm_status_name(HM_OK), "HM_OK") == 0);
  CHECK(std::strcmp(hm_status_name(HM_ERR_SYNTAX), "HM_ERR_SYNTAX") == 0);
}

TEST_CASE("generator lifecycle: parse, eval, print, kappa") {
  GenHandle h;
  REQUIRE(hm_generator_parse("x^0.5 - 1", 0, 0, &h.g) == HM_OK);

  double v = 0;
  REQUIRE(hm_generator_eval(h.g, 0, 4.0, &v) == HM_OK);
  CHECK(v == doctest::Approx(1.0));
  REQUIRE(hm_generator_eval(h.g, 1, 4.0, &v) == HM_OK);
  CHECK(v == doctest::Approx(0.25));

  char* text = nullptr;
  REQUIRE(hm_generator_print(h.g, 0, &text) == HM_OK);
  CHECK(std::string(text) == "x^0.5 - 1");
  hm_string_free(text);

  REQUIRE(hm_generator_kappa(h.g, 10.0, &v) == HM_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parse errors set codes, messages and positions") {
  hm_generator* g = nullptr;
  CHECK(hm_generator_parse("1 + * 2", 0, 0, &g) == HM_ERR_SYNTAX);
  CHECK(std::strlen(hm_last_error()) > 0);
  CHECK(hm_last_error_position() == 4);
  CHECK(hm_generator_parse("x^x", 0, 0, &g) == HM_ERR_NON_CONSTANT_EXPONENT);
  CHECK(hm_last_error_position() == 2);
  CHECK(hm_generator_parse("x^2 - x", 0, 0, &g) == HM_ERR_DERIVATIVE_VANISHES);
  CHECK(hm_last_error_position() == -1);
  CHECK(hm_generator_parse(nullptr, 0, 0, &g) == HM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("mean evaluation through the C surface") {
  MeanHandle geo;
  REQUIRE(hm_mean_power(0.0, &geo.m) == HM_OK);
  double xs[] = {1.0, 4.0};
  double v = 0;
  REQUIRE(hm_mean_eval(geo.m, xs, 2, &v) == HM_OK);
  CHECK(v == doctest::Approx(2.0));

  MeanHandle gini;
  REQUIRE(hm_mean_gini(2.0, 1.0, &gini.m) == HM_OK);
  double ys[] = {1.0, 2.0, 3.0};
  REQUIRE(hm_mean_eval(gini.m, ys, 3, &v) == HM_OK);
  CHECK(v == doctest::Approx(14.0 / 6.0));

  GenHandle lg;
  REQUIRE(hm_generator_parse("ln(x)", 0, 0, &lg.g) == HM_OK);
  MeanHandle qa;
  REQUIRE(hm_mean_quasi_arithmetic(lg.g, &qa.m) == HM_OK);
  REQUIRE(hm_mean_eval(qa.m, xs, 2, &v) == HM_OK);
  CHECK(v == doctest::Approx(2.0));

  MeanHandle dev;
  REQUIRE(hm_mean_homogeneous_deviation(lg.g, &dev.m) == HM_OK);
  REQUIRE(hm_mean_eval(dev.m, xs, 2, &v) == HM_OK);
  CHECK(v == doctest::Approx(2.0));

  double bad[] = {1.0, -1.0};
  CHECK(hm_mean_eval(geo.m, bad, 2, &v) == HM_ERR_NON_POSITIVE_ENTRY);
}

TEST_CASE("homogeneous deviation mean rejects f(1) != 0") {
  GenHandle aff;
  REQUIRE(hm_generator_parse("x", 0, 0, &aff.g) == HM_OK);
  hm_mean* m = nullptr;
  CHECK(hm_mean_homogeneous_deviation(aff.g, &m) == HM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("hardy closed form JSON") {
  MeanHandle m;
  REQUIRE(hm_mean_gini(0.0, 0.0, &m.m) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_hardy_closed_form(m.m, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["method"] == "ClosedFormGini");
  CHECK(j["constant"].get<double>() == doctest::Approx(std::numbers::e));
  CHECK(j.contains("interval"));
  CHECK(j.contains("caveats"));
  CHECK(j.contains("diagnostics"));

  // power means: infinite constants serialize as "inf"
  MeanHandle p2;
  REQUIRE(hm_mean_power(2.0, &p2.m) == HM_OK);
  REQUIRE(hm_hardy_closed_form(p2.m, &out) == HM_OK);
  json j2 = parse_and_free(out);
  CHECK(j2["constant"] == "inf");

  // closed form rejected for solver families
  GenHandle lg;
  REQUIRE(hm_generator_parse("ln(x)", 0, 0, &lg.g) == HM_OK);
  MeanHandle qa;
  REQUIRE(hm_mean_quasi_arithmetic(lg.g, &qa.m) == HM_OK);
  CHECK(hm_hardy_closed_form(qa.m, &out) == HM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("hardy limit JSON") {
  MeanHandle m;
  REQUIRE(hm_mean_power(0.0, &m.m) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_hardy_limit(m.m, 100000, 0.0, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["method"] == "LimitExtrapolation");
  CHECK(std::fabs(j["constant"].get<double>() - std::numbers::e) <= 1e-3);
  CHECK(j["diagnostics"]["kind"] == "limit");
  CHECK(j["diagnostics"]["raw_terms"].size() >= 4);
}

TEST_CASE("hardy integral JSON") {
  GenHandle g;
  REQUIRE(hm_generator_parse("x^0.5 - 1", 0, 0, &g.g) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_hardy_integral(g.g, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["method"] == "IntegralEquation");
  CHECK(std::fabs(j["constant"].get<double>() - 4.0) <= 1e-8);
  CHECK(j["diagnostics"]["kind"] == "integral");
  CHECK(j["diagnostics"]["status"] == "Converged");
}

TEST_CASE("hardy kappa analysis JSON") {
  GenHandle g;
  REQUIRE(hm_generator_parse("ln(x)", 0, 0, &g.g) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_hardy_kappa_analysis(g.g, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(std::fabs(j["constant"].get<double>() - std::numbers::e) <= 1e-9);
  CHECK(j["diagnostics"]["kind"] == "shape");
  CHECK(j["diagnostics"]["ratio_convex"] == true);
  CHECK(j["diagnostics"]["ratio_negative"] == true);
}

TEST_CASE("hardy lower bound JSON") {
  MeanHandle m;
  REQUIRE(hm_mean_power(0.0, &m.m) == HM_OK);
  double ys[] = {0.5, 1.0, 2.0};
  char* out = nullptr;
  REQUIRE(hm_hardy_lower_bound(m.m, ys, 3, 100000, &out) == HM_OK);
  json j = parse_and_free(out);
  double c = j["constant"].get<double>();
  CHECK(c >= std::numbers::e - 5e-3);
  CHECK(c <= std::numbers::e + 5e-3);
}

TEST_CASE("verify through the C surface") {
  MeanHandle m;
  REQUIRE(hm_mean_power(0.5, &m.m) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_verify_hardy(m.m, "powerlaw", 2.0, nullptr, 0, 10000, 4.0, 0, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["satisfied"] == true);
  CHECK(j["ratio"].get<double>() < 4.0);
  CHECK(j["summable"] == true);
  CHECK(j["N"] == 10000);

  double terms[] = {1.0, 0.25, 1.0 / 9.0, 1.0 / 16.0};
  REQUIRE(hm_verify_hardy(m.m, "custom", 0.0, terms, 4, 4, 4.0, 1, &out) == HM_OK);
  json j2 = parse_and_free(out);
  CHECK(j2["satisfied"] == true);
  CHECK(j2["per_step_ratios"].size() == 4);

  CHECK(hm_verify_hardy(m.m, "nonsense", 0.0, nullptr, 0, 10, 4.0, 0, &out) ==
        HM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("shape report and comparison through the C surface") {
  GenHandle lg, sq;
  REQUIRE(hm_generator_parse("ln(x)", 0, 0, &lg.g) == HM_OK);
  REQUIRE(hm_generator_parse("x^0.5 - 1", 0, 0, &sq.g) == HM_OK);

  char* out = nullptr;
  REQUIRE(hm_shape_report(lg.g, 1e-3, 1e3, 48, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["f2_sign"] == "AllNegative");
  CHECK(std::fabs(j["kappa_limit_at_zero"].get<double>()) <= 1e-9);

  int verdict = -1;
  REQUIRE(hm_compare_generators(lg.g, sq.g, 1e-3, 1e3, 48, &verdict) == HM_OK);
  CHECK(verdict == 0);  // FLeqG
  REQUIRE(hm_compare_generators(sq.g, lg.g, 1e-3, 1e3, 48, &verdict) == HM_OK);
  CHECK(verdict == 1);  // GLeqF
}

TEST_CASE("property checks through the C surface") {
  MeanHandle m;
  REQUIRE(hm_mean_gini(2.0, 1.0, &m.m) == HM_OK);
  char* out = nullptr;
  REQUIRE(hm_mean_check_properties(m.m, 2024, 100, &out) == HM_OK);
  json j = parse_and_free(out);
  CHECK(j["jensen_concave_sampled"] == false);
  CHECK(j["counterexample"].is_object());
  // seeded runs are byte-identical
  char* again = nullptr;
  REQUIRE(hm_mean_check_properties(m.m, 2024, 100, &again) == HM_OK);
  json j2 = parse_and_free(again);
  CHECK(j == j2);
}

TEST_CASE("hardy power constant through the C surface") {
  double v = 0;
  REQUIRE(hm_hardy_power_constant(0.5, &v) == HM_OK);
  CHECK(v == 4.0);
  REQUIRE(hm_hardy_power_constant(2.0, &v) == HM_OK);
  CHECK(std::isinf(v));
}
