#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/means.hpp"
#include "core/rng.hpp"

using namespace hm;

namespace {

std::vector<double> random_vector(Rng& rng, int max_dim = 8) {
  int dim = rng.uniform_int(2, max_dim);
  std::vector<double> x(dim);
  for (double& v : x) v = rng.log_uniform(1e-3, 1e3);
  return x;
}

}  // namespace

TEST_CASE("power_mean: arithmetic, geometric, min, max") {
  std::vector<double> v{1, 2, 3};
  CHECK(power_mean(1.0, v) == doctest::Approx(2.0));
  std::vector<double> w{1, 4};
  CHECK(power_mean(0.0, w) == doctest::Approx(2.0));
  std::vector<double> u{3, 1, 2};
  CHECK(power_mean(-std::numeric_limits<double>::infinity(), u) == 1.0);
  CHECK(power_mean(std::numeric_limits<double>::infinity(), u) == 3.0);
}

TEST_CASE("power_mean: stable at |p| up to 300") {
  std::vector<double> v{1e-3, 0.5, 7.0, 1e3};
  for (double p : {300.0, -300.0, 250.0, -250.0}) {
    double m = power_mean(p, v);
    CHECK(std::isfinite(m));
    CHECK(m >= 1e-3);
    CHECK(m <= 1e3);
  }
  // large p approaches the max, large negative p the min
  CHECK(power_mean(300.0, v) == doctest::Approx(1e3).epsilon(0.1));
  CHECK(power_mean(-300.0, v) == doctest::Approx(1e-3).epsilon(0.1));
}

TEST_CASE("power_mean: input validation") {
  std::vector<double> empty;
  CHECK_THROWS_AS(power_mean(1.0, empty), Error);
  std::vector<double> bad{1.0, 0.0};
  try {
    power_mean(1.0, bad);
    FAIL("expected NonPositiveEntry");
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_positive_entry);
  }
}

TEST_CASE("quasi_arithmetic_mean: log generator gives the geometric mean") {
  std::vector<double> v{1, 4};
  CHECK(quasi_arithmetic_mean(Generator::log(), v) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quasi_arithmetic_mean: affine generator gives the arithmetic mean") {
  std::vector<double> v{1, 2, 3};
  CHECK(quasi_arithmetic_mean(Generator::parse("x"), v) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quasi_arithmetic_mean: power generators reduce to power means") {
  Rng rng(11);
  for (double p : {-2.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
    Generator g = Generator::power(p);
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x = random_vector(rng);
      double qa = quasi_arithmetic_mean(g, x);
      double pm = power_mean(p, x);
      CHECK_MESSAGE(std::fabs(qa - pm) <= 1e-10 * std::max(1.0, pm), "p=", p);
    }
  }
}

TEST_CASE("quasi_arithmetic_mean: constant vectors shortcut") {
  std::vector<double> v{2.5, 2.5, 2.5};
  CHECK(quasi_arithmetic_mean(Generator::log(), v) == 2.5);
}

TEST_CASE("gini_mean: closed-form examples") {
  std::vector<double> v{1, 2, 3};
  CHECK(gini_mean(1.0, 0.0, v) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(gini_mean(2.0, 1.0, v) == doctest::Approx(14.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("gini_mean: reduces to the power mean at q = 0") {
  Rng rng(13);
  for (double p : {-1.0, -0.5, 0.5, 2.0, 0.0}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<double> x = random_vector(rng);
      double gm = gini_mean(p, 0.0, x);
      double pm = power_mean(p, x);
      CHECK(std::fabs(gm - pm) <= 1e-12 * std::max(1.0, pm));
    }
  }
}

TEST_CASE("gini_mean: symmetric in (p, q)") {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x = random_vector(rng);
    double p = rng.uniform(-2, 2), q = rng.uniform(-2, 2);
    double a = gini_mean(p, q, x), b = gini_mean(q, p, x);
    CHECK(std::fabs(a - b) <= 1e-11 * std::max(1.0, a));
  }
}

TEST_CASE("gini_mean: p = q diagonal branch") {
  std::vector<double> v{1, 2, 3};
  double expected = std::exp((1 * std::log(1) + 2 * std::log(2) + 3 * std::log(3)) / 6.0);
  CHECK(gini_mean(1.0, 1.0, v) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("deviation_mean: E = x - y is the arithmetic mean") {
  std::vector<double> v{1, 2, 3};
  double m = deviation_mean([](double x, double y) { return x - y; }, v);
  CHECK(m == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("deviation_mean: E = f(x) - f(y) reduces to the QA mean") {
  Generator lg = Generator::log();
  std::vector<double> v{1, 4};
  double m = deviation_mean([&](double x, double y) { return lg.f(x) - lg.f(y); }, v);
  CHECK(m == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(23);
  Generator g = Generator::gini_chi(0.5, -1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x = random_vector(rng);
    double dm = deviation_mean([&](double a, double y) { return g.f(a) - g.f(y); }, x);
    double qa = quasi_arithmetic_mean(g, x);
    CHECK(std::fabs(dm - qa) <= 1e-9 * std::max(1.0, qa));
  }
}

TEST_CASE("deviation_mean: chi-based E_{p,q} matches the Gini mean") {
  // E_{p,q}(x, y) = y^p chi_{p,q}(x/y) is a valid deviation function for all
  // (p, q), including parameters where chi itself is not monotone
  Rng rng(29);
  for (auto [p, q] : {std::pair{0.5, -1.0}, std::pair{2.0, 1.0}, std::pair{0.25, -0.5}}) {
    auto E = [p = p, q = q](double x, double y) {
      double r = x / y;
      return std::pow(y, p) * (std::pow(r, p) - std::pow(r, q)) / (p - q);
    };
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x = random_vector(rng, 6);
      double dm = deviation_mean(E, x);
      double gm = gini_mean(p, q, x);
      CHECK_MESSAGE(std::fabs(dm - gm) <= 1e-9 * std::max(1.0, gm), "p=", p, " q=", q);
    }
  }
}

TEST_CASE("deviation_mean: residual stays below 1e-10 * n") {
  Rng rng(31);
  Generator chi = Generator::gini_chi(0.5, -1.0);
  auto E = [&](double x, double y) { return chi.f(x / y); };
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x = random_vector(rng);
    double y = deviation_mean(E, x);
    double resid = 0.0;
    for (double xi : x) resid += E(xi, y);
    CHECK(std::fabs(resid) <= 1e-10 * static_cast<double>(x.size()));
  }
}

TEST_CASE("homogeneous_deviation_mean: log generator gives the geometric mean") {
  std::vector<double> v{1, 4};
  CHECK(homogeneous_deviation_mean(Generator::log(), v) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("homogeneous_deviation_mean: x^(1/2) - 1 gives the p = 1/2 power mean") {
  Rng rng(37);
  Generator f = Generator::parse("x^0.5 - 1");
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x = random_vector(rng);
    double dm = homogeneous_deviation_mean(f, x);
    double pm = power_mean(0.5, x);
    CHECK(std::fabs(dm - pm) <= 1e-9 * std::max(1.0, pm));
  }
}

TEST_CASE("homogeneous_deviation_mean: (x^p - 1)/p reduces to P_p; ln to P_0") {
  Rng rng(41);
  for (double p : {0.5, -1.0, 0.25}) {
    Generator f = Generator::parse("(x^" + std::to_string(p) + " - 1)/" + std::to_string(p));
    for (int t = 0; t < 30; ++t) {
      std::vector<double> x = random_vector(rng);
      double dm = homogeneous_deviation_mean(f, x);
      double pm = power_mean(p, x);
      CHECK(std::fabs(dm - pm) <= 1e-9 * std::max(1.0, pm));
    }
  }
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x = random_vector(rng);
    double dm = homogeneous_deviation_mean(Generator::log(), x);
    double pm = power_mean(0.0, x);
    CHECK(std::fabs(dm - pm) <= 1e-9 * std::max(1.0, pm));
  }
}

TEST_CASE("homogeneous_deviation_mean: scaling identity") {
  Rng rng(43);
  Generator f = Generator::gini_chi(0.5, -1.0);
  for (double lam : {0.5, 3.0}) {
    for (int t = 0; t < 30; ++t) {
      std::vector<double> x = random_vector(rng);
      std::vector<double> xl = x;
      for (double& v : xl) v *= lam;
      double a = homogeneous_deviation_mean(f, x);
      double b = homogeneous_deviation_mean(f, xl);
      CHECK(std::fabs(b - lam * a) <= 1e-10 * std::max(1.0, lam * a));
    }
  }
}

TEST_CASE("MeanSpec validation") {
  // f(1) != 0
  CHECK_THROWS_AS(MeanSpec::homogeneous_deviation(Generator::parse("x")), Error);
  // decreasing f
  CHECK_THROWS_AS(MeanSpec::homogeneous_deviation(Generator::parse("1/x - 1")), Error);
  // fine: increasing with f(1) = 0
  MeanSpec ok = MeanSpec::homogeneous_deviation(Generator::parse("1 - 1/x"));
  std::vector<double> v{1, 2, 4};
  CHECK(evaluate_mean(ok, v) == doctest::Approx(power_mean(-1.0, v)).epsilon(1e-9));

  // deviation function that does not vanish on the diagonal
  CHECK_THROWS_AS(MeanSpec::deviation(DeviationFn{"bad", [](double x, double y) {
                                                    return x - y + 1.0;
                                                  }}),
                  Error);
  // increasing in y instead of decreasing
  CHECK_THROWS_AS(MeanSpec::deviation(DeviationFn{"bad2", [](double x, double y) {
                                                    return y - x;
                                                  }}),
                  Error);
}

TEST_CASE("internality across all families") {
  Rng rng(47);
  std::vector<MeanSpec> specs;
  specs.push_back(MeanSpec::power(0.5));
  specs.push_back(MeanSpec::power(-3.0));
  specs.push_back(MeanSpec::power(std::numeric_limits<double>::infinity()));
  specs.push_back(MeanSpec::quasi_arithmetic(Generator::gini_chi(0.5, -1.0)));
  specs.push_back(MeanSpec::gini(2.0, 1.0));
  specs.push_back(MeanSpec::gini(-1.0, 0.5));
  specs.push_back(MeanSpec::deviation(DeviationFn{"x-y", [](double x, double y) {
                                                    return x - y;
                                                  }}));
  specs.push_back(MeanSpec::homogeneous_deviation(Generator::gini_chi(0.5, -1.0)));
  for (const auto& m : specs) {
    for (int t = 0; t < 40; ++t) {
      std::vector<double> x = random_vector(rng);
      double v = evaluate_mean(m, x);
      double lo = *std::min_element(x.begin(), x.end());
      double hi = *std::max_element(x.begin(), x.end());
      CHECK_MESSAGE(v >= lo - 1e-9 * std::max(1.0, v), m.describe());
      CHECK_MESSAGE(v <= hi + 1e-9 * std::max(1.0, v), m.describe());
    }
  }
}

TEST_CASE("check_mean_properties: Power(1/2) satisfies everything") {
  PropertyReport r = check_mean_properties(MeanSpec::power(0.5), 2024, 100);
  CHECK(r.symmetric);
  CHECK(r.repetition_invariant);
  CHECK(r.monotone);
  CHECK(r.internal);
  REQUIRE(r.homogeneous.has_value());
  CHECK(*r.homogeneous);
  CHECK(r.jensen_concave_sampled);
  CHECK_FALSE(r.counterexample.has_value());
}

TEST_CASE("check_mean_properties: Gini(2,1) fails Jensen concavity with a witness") {
  PropertyReport r = check_mean_properties(MeanSpec::gini(2.0, 1.0), 2024, 100);
  CHECK_FALSE(r.jensen_concave_sampled);
  REQUIRE(r.counterexample.has_value());
  // replay the stored counterexample
  bool found = false;
  for (const auto& ce : r.counterexamples) {
    if (ce.property != "jensen_concave_sampled") continue;
    found = true;
    std::vector<double> mid(ce.x.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (ce.x[i] + ce.u[i]);
    double lhs = gini_mean(2.0, 1.0, mid);
    double rhs = 0.5 * (gini_mean(2.0, 1.0, ce.x) + gini_mean(2.0, 1.0, ce.u));
    CHECK(lhs < rhs);
  }
  CHECK(found);
}

TEST_CASE("check_mean_properties: homogeneous deviation of log satisfies everything") {
  PropertyReport r =
      check_mean_properties(MeanSpec::homogeneous_deviation(Generator::log()), 7, 60);
  CHECK(r.symmetric);
  CHECK(r.repetition_invariant);
  CHECK(r.monotone);
  CHECK(r.internal);
  REQUIRE(r.homogeneous.has_value());
  CHECK(*r.homogeneous);
  CHECK(r.jensen_concave_sampled);
}

TEST_CASE("check_mean_properties: homogeneity is N/A for general QA means") {
  PropertyReport r =
      check_mean_properties(MeanSpec::quasi_arithmetic(Generator::gini_chi(0.5, -1.0)), 3, 20);
  CHECK_FALSE(r.homogeneous.has_value());
}

TEST_CASE("repetition invariance tolerance split between closed-form and solver families") {
  Rng rng(53);
  MeanSpec closed = MeanSpec::gini(0.5, -0.5);
  MeanSpec solver = MeanSpec::homogeneous_deviation(Generator::gini_chi(0.5, -1.0));
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x = random_vector(rng, 6);
    std::vector<double> xx;
    for (double v : x) xx.insert(xx.end(), 3, v);
    double a = evaluate_mean(closed, x), aa = evaluate_mean(closed, xx);
    CHECK(std::fabs(a - aa) <= 1e-12 * std::max(1.0, a));
    double b = evaluate_mean(solver, x), bb = evaluate_mean(solver, xx);
    CHECK(std::fabs(b - bb) <= 1e-9 * std::max(1.0, b));
  }
}

TEST_CASE("mikusinski bridge: kappa comparison implies mean comparison") {
  Rng rng(59);
  auto catalog = catalog_generators();
  GridSpec grid{1e-3, 1e3, 32};
  int compared = 0;
  for (int t = 0; t < 40; ++t) {
    const auto& [fname, fg] = catalog[rng.uniform_int(0, static_cast<int>(catalog.size()) - 1)];
    const auto& [gname, gg] = catalog[rng.uniform_int(0, static_cast<int>(catalog.size()) - 1)];
    Comparison c = compare_generators(fg, gg, grid);
    if (c == Comparison::Incomparable) continue;
    const Generator& lo = (c == Comparison::FLeqG) ? fg : gg;
    const Generator& hi = (c == Comparison::FLeqG) ? gg : fg;
    ++compared;
    for (int v = 0; v < 30; ++v) {
      std::vector<double> x = random_vector(rng, 6);
      double a = quasi_arithmetic_mean(lo, x);
      double b = quasi_arithmetic_mean(hi, x);
      CHECK_MESSAGE(a <= b + 1e-9 * std::max(1.0, b), fname, " vs ", gname);
    }
  }
  CHECK(compared > 5);
}
