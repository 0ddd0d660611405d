#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/expression.hpp"
#include "core/rng.hpp"

using namespace hm;

TEST_CASE("parse: power/subtract shape") {
  ExprPtr e = parse_expression("x^0.5 - 1");
  REQUIRE(e->kind == Expr::Kind::Sub);
  CHECK(e->lhs->kind == Expr::Kind::Pow);
  CHECK(e->lhs->exponent == 0.5);
  CHECK(e->rhs->kind == Expr::Kind::Constant);
  CHECK(e->rhs->value == 1.0);
}

TEST_CASE("parse: ln node") {
  ExprPtr e = parse_expression("ln(x)");
  REQUIRE(e->kind == Expr::Kind::Ln);
  CHECK(e->lhs->kind == Expr::Kind::Variable);
}

TEST_CASE("parse: chi_{1/2,-1} expression") {
  ExprPtr e = parse_expression("(x^0.5 - x^-1)/1.5");
  REQUIRE(e->kind == Expr::Kind::Div);
  CHECK(e->lhs->kind == Expr::Kind::Sub);
  CHECK(e->lhs->lhs->exponent == 0.5);
  CHECK(e->lhs->rhs->exponent == -1.0);
  CHECK(evaluate(e, 4.0) == doctest::Approx((2.0 - 0.25) / 1.5));
}

TEST_CASE("parse: constants e and pi") {
  CHECK(evaluate(parse_expression("e"), 1.0) == std::numbers::e);
  CHECK(evaluate(parse_expression("pi"), 1.0) == std::numbers::pi);
  CHECK(evaluate(parse_expression("exp(1)"), 0.0) == doctest::Approx(std::numbers::e));
}

TEST_CASE("parse: grammar precedence") {
  // '-' binds inside the factor, so -x^2 is (-x)^2
  CHECK(evaluate(parse_expression("-x^2"), 3.0) == doctest::Approx(9.0));
  CHECK(evaluate(parse_expression("2 + 3 * 4"), 0.0) == doctest::Approx(14.0));
  CHECK(evaluate(parse_expression("2 * x^2"), 3.0) == doctest::Approx(18.0));
  CHECK(evaluate(parse_expression("1 - 2 - 3"), 0.0) == doctest::Approx(-4.0));
  CHECK(evaluate(parse_expression("12 / 2 / 3"), 0.0) == doctest::Approx(2.0));
  CHECK(evaluate(parse_expression("x^-2"), 2.0) == doctest::Approx(0.25));
  CHECK(evaluate(parse_expression("2e2 + 1"), 0.0) == doctest::Approx(201.0));
}

TEST_CASE("parse: syntax errors carry positions") {
  try {
    parse_expression("1 + * 2");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::syntax_error);
    CHECK(e.position() >= 0);
  }
  CHECK_THROWS_AS(parse_expression("ln x"), Error);
  CHECK_THROWS_AS(parse_expression("(1 + 2"), Error);
  CHECK_THROWS_AS(parse_expression("foo(x)"), Error);
  CHECK_THROWS_AS(parse_expression(""), Error);
}

TEST_CASE("parse: non-constant exponents rejected") {
  for (const char* bad : {"x^x", "x^(2)", "x^ln(x)", "2^x"}) {
    try {
      parse_expression(bad);
      FAIL("expected NonConstantExponent for ", bad);
    } catch (const Error& e) {
      CHECK(e.code() == errc::non_constant_exponent);
    }
  }
}

TEST_CASE("print/parse round-trip on named expressions") {
  for (const char* text : {"x^0.5 - 1", "ln(x)", "(x^0.5 - x^-1)/1.5", "x", "x^2",
                           "2*(sqrt(x) - 1)", "x - 1/x", "exp(x) / (1 + x)",
                           "-x^2 + 3*x - 1", "sqrt(x^3)", "x^2.5 * ln(x)", "1/(x + 1)"}) {
    ExprPtr e = parse_expression(text);
    ExprPtr back = parse_expression(print_expression(e));
    CHECK_MESSAGE(structurally_equal(e, back), "round-trip failed for: ", text,
                  " printed as: ", print_expression(e));
  }
}

namespace {

// random AST of bounded depth, built through the simplifying constructors
ExprPtr random_ast(Rng& rng, int depth) {
  int pick = rng.uniform_int(0, depth <= 0 ? 2 : 9);
  switch (pick) {
    case 0: return make_constant(std::round(rng.uniform(-8, 8) * 4.0) / 4.0);
    case 1:
    case 2: return make_variable();
    case 3: return make_add(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 4: return make_sub(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 5: return make_mul(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 6: return make_div(random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    case 7: return make_pow(random_ast(rng, depth - 1), std::round(rng.uniform(-3, 3) * 2.0) / 2.0);
    case 8: return make_neg(random_ast(rng, depth - 1));
    default: {
      int fn = rng.uniform_int(0, 2);
      ExprPtr arg = random_ast(rng, depth - 1);
      return fn == 0 ? make_ln(arg) : (fn == 1 ? make_exp(arg) : make_sqrt(arg));
    }
  }
}

}  // namespace

TEST_CASE("print/parse round-trip on 100 random ASTs of depth <= 5") {
  Rng rng(2024);
  int checked = 0;
  while (checked < 100) {
    ExprPtr e = random_ast(rng, 5);
    std::string text = print_expression(e);
    ExprPtr back = parse_expression(text);
    CHECK_MESSAGE(structurally_equal(e, back), "round-trip failed for: ", text);
    ++checked;
  }
}

TEST_CASE("differentiate: power rule") {
  ExprPtr e = differentiate(parse_expression("x^3"));
  CHECK(evaluate(e, 2.0) == doctest::Approx(12.0));
  ExprPtr e2 = differentiate(parse_expression("x^0.5"));
  CHECK(evaluate(e2, 4.0) == doctest::Approx(0.25));
}

TEST_CASE("differentiate: ln") {
  ExprPtr e = differentiate(parse_expression("ln(x)"));
  CHECK(evaluate(e, 5.0) == doctest::Approx(0.2));
}

TEST_CASE("differentiate: simplification keeps derivatives compact") {
  // d/dx (x^p) = p x^(p-1) should fold to a single product
  ExprPtr d = differentiate(parse_expression("x^3"));
  CHECK(print_expression(d) == "3 * x^2");
  CHECK(print_expression(differentiate(parse_expression("x"))) == "1");
  CHECK(print_expression(differentiate(parse_expression("7"))) == "0");
}

TEST_CASE("differentiate matches central finite differences") {
  Rng rng(99);
  for (const char* text :
       {"x^2", "x^-1.5", "ln(x)", "sqrt(x)", "(x^0.5 - x^-1)/1.5", "x - 1/x",
        "x^2 * ln(x)", "1/(1 + x)", "x^0.25 + x^-0.25"}) {
    ExprPtr f = parse_expression(text);
    ExprPtr df = differentiate(f);
    for (int i = 0; i < 40; ++i) {
      double x = rng.log_uniform(1e-3, 1e3);
      double h = x * 1e-6;
      double fd = (evaluate(f, x + h) - evaluate(f, x - h)) / (2.0 * h);
      double sym = evaluate(df, x);
      if (std::fabs(sym) > 1e-8) {
        CHECK_MESSAGE(std::fabs(fd - sym) <= 1e-6 * std::fabs(sym) + 1e-12,
                      text, " at x=", x, " sym=", sym, " fd=", fd);
      }
    }
  }
}

TEST_CASE("evaluate: exp and sqrt nodes") {
  CHECK(evaluate(parse_expression("exp(ln(x))"), 7.0) == doctest::Approx(7.0));
  CHECK(evaluate(parse_expression("sqrt(x) * sqrt(x)"), 5.0) == doctest::Approx(5.0));
}
