// SPDX-License-Identifier: Apache-2.0
#include "core/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace hm {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, double v) {
  return e->kind == Expr::Kind::Constant && e->value == v;
}

}  // namespace

ExprPtr make_constant(double v) {
  Expr e;
  e.kind = Expr::Kind::Constant;
  e.value = v;
  return node(std::move(e));
}

ExprPtr make_variable() {
  Expr e;
  e.kind = Expr::Kind::Variable;
  return node(std::move(e));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant) {
    double v = a->value + b->value;
    if (std::isfinite(v)) return make_constant(v);
  }
  Expr e;
  e.kind = Expr::Kind::Add;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return node(std::move(e));
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return make_neg(std::move(b));
  if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant) {
    double v = a->value - b->value;
    if (std::isfinite(v)) return make_constant(v);
  }
  Expr e;
  e.kind = Expr::Kind::Sub;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return node(std::move(e));
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant) {
    double v = a->value * b->value;
    if (std::isfinite(v)) return make_constant(v);
  }
  // (c1 * (c2 * g)) -> (c1*c2) * g
  if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Mul &&
      b->lhs->kind == Expr::Kind::Constant) {
    double v = a->value * b->lhs->value;
    if (std::isfinite(v)) return make_mul(make_constant(v), b->rhs);
  }
  Expr e;
  e.kind = Expr::Kind::Mul;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return node(std::move(e));
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(b, 1.0)) return a;
  if (a->kind == Expr::Kind::Constant && b->kind == Expr::Kind::Constant && b->value != 0.0) {
    double v = a->value / b->value;
    if (std::isfinite(v)) return make_constant(v);
  }
  Expr e;
  e.kind = Expr::Kind::Div;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return node(std::move(e));
}

ExprPtr make_neg(ExprPtr a) {
  if (a->kind == Expr::Kind::Constant) return make_constant(-a->value);
  if (a->kind == Expr::Kind::Neg) return a->lhs;
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.lhs = std::move(a);
  return node(std::move(e));
}

ExprPtr make_pow(ExprPtr base, double exponent) {
  if (!std::isfinite(exponent)) {
    throw Error(errc::invalid_argument, "power exponent must be finite");
  }
  if (exponent == 0.0) return make_constant(1.0);  // positive domain convention
  if (exponent == 1.0) return base;
  if (base->kind == Expr::Kind::Constant) {
    double v = std::pow(base->value, exponent);
    if (std::isfinite(v)) return make_constant(v);
  }
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.exponent = exponent;
  e.lhs = std::move(base);
  return node(std::move(e));
}

namespace {

ExprPtr make_unary(Expr::Kind k, ExprPtr a) {
  Expr e;
  e.kind = k;
  e.lhs = std::move(a);
  return node(std::move(e));
}

}  // namespace

ExprPtr make_ln(ExprPtr a) { return make_unary(Expr::Kind::Ln, std::move(a)); }
ExprPtr make_exp(ExprPtr a) { return make_unary(Expr::Kind::Exp, std::move(a)); }
ExprPtr make_sqrt(ExprPtr a) { return make_unary(Expr::Kind::Sqrt, std::move(a)); }

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text), pos_(0) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_;

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(errc::syntax_error, msg + " at position " + std::to_string(pos_),
                static_cast<long>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = make_add(e, parse_term());
      } else if (eat('-')) {
        e = make_sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    for (;;) {
      if (eat('*')) {
        e = make_mul(e, parse_factor());
      } else if (eat('/')) {
        e = make_div(e, parse_factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_unary();
    if (eat('^')) {
      skip_ws();
      double expnt = parse_signed_number();
      return make_pow(base, expnt);
    }
    return base;
  }

  ExprPtr parse_unary() {
    if (eat('-')) return make_neg(parse_unary());
    return parse_atom();
  }

  double parse_signed_number() {
    std::size_t start = pos_;
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v)) {
      char c = peek();
      if (c == 'x' || c == '(' || std::isalpha(static_cast<unsigned char>(c))) {
        throw Error(errc::non_constant_exponent,
                    "exponent must be a numeric literal, got an expression at position " +
                        std::to_string(pos_),
                    static_cast<long>(pos_));
      }
      fail("expected a numeric exponent");
    }
    pos_ = start + static_cast<std::size_t>(end - begin);
    return v;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make_constant(v);
    }

    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word == "x") return make_variable();
      if (word == "e") return make_constant(std::numbers::e);
      if (word == "pi") return make_constant(std::numbers::pi);
      if (word == "ln" || word == "exp" || word == "sqrt") {
        if (!eat('(')) fail("expected '(' after '" + word + "'");
        ExprPtr arg = parse_expr();
        if (!eat(')')) fail("expected ')'");
        if (word == "ln") return make_ln(arg);
        if (word == "exp") return make_exp(arg);
        return make_sqrt(arg);
      }
      pos_ = start;
      fail("unknown identifier '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// precedence levels matching the grammar
enum Level { kExpr = 0, kTerm = 1, kFactor = 2, kUnary = 3, kAtom = 4 };

Level level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return kExpr;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return kTerm;
    case Expr::Kind::Pow: return kFactor;
    case Expr::Kind::Neg: return kUnary;
    case Expr::Kind::Constant:
      return e.value < 0.0 ? kUnary : kAtom;  // prints with a leading '-'
    default: return kAtom;
  }
}

void print_at(const ExprPtr& e, Level min_level, std::string& out) {
  bool parens = level_of(*e) < min_level;
  if (parens) out += '(';
  switch (e->kind) {
    case Expr::Kind::Constant:
      out += format_number(e->value);
      break;
    case Expr::Kind::Variable:
      out += 'x';
      break;
    case Expr::Kind::Add:
      print_at(e->lhs, kExpr, out);
      out += " + ";
      print_at(e->rhs, kTerm, out);
      break;
    case Expr::Kind::Sub:
      print_at(e->lhs, kExpr, out);
      out += " - ";
      print_at(e->rhs, kTerm, out);
      break;
    case Expr::Kind::Mul:
      print_at(e->lhs, kTerm, out);
      out += " * ";
      print_at(e->rhs, kFactor, out);
      break;
    case Expr::Kind::Div:
      print_at(e->lhs, kTerm, out);
      out += " / ";
      print_at(e->rhs, kFactor, out);
      break;
    case Expr::Kind::Pow:
      // base at unary level, but a nested power needs parentheses: the
      // grammar allows a single '^' per factor
      print_at(e->lhs, e->lhs->kind == Expr::Kind::Pow ? kAtom : kUnary, out);
      out += '^';
      out += format_number(e->exponent);
      break;
    case Expr::Kind::Neg:
      out += '-';
      print_at(e->lhs, e->lhs->kind == Expr::Kind::Pow ? kAtom : kUnary, out);
      break;
    case Expr::Kind::Ln:
      out += "ln(";
      print_at(e->lhs, kExpr, out);
      out += ')';
      break;
    case Expr::Kind::Exp:
      out += "exp(";
      print_at(e->lhs, kExpr, out);
      out += ')';
      break;
    case Expr::Kind::Sqrt:
      out += "sqrt(";
      print_at(e->lhs, kExpr, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_expression(const ExprPtr& e) {
  std::string out;
  print_at(e, kExpr, out);
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation / evaluation / equality
// ---------------------------------------------------------------------------

ExprPtr differentiate(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Constant: return make_constant(0.0);
    case Expr::Kind::Variable: return make_constant(1.0);
    case Expr::Kind::Add: return make_add(differentiate(e->lhs), differentiate(e->rhs));
    case Expr::Kind::Sub: return make_sub(differentiate(e->lhs), differentiate(e->rhs));
    case Expr::Kind::Mul:
      return make_add(make_mul(differentiate(e->lhs), e->rhs),
                      make_mul(e->lhs, differentiate(e->rhs)));
    case Expr::Kind::Div:
      return make_div(make_sub(make_mul(differentiate(e->lhs), e->rhs),
                               make_mul(e->lhs, differentiate(e->rhs))),
                      make_pow(e->rhs, 2.0));
    case Expr::Kind::Neg: return make_neg(differentiate(e->lhs));
    case Expr::Kind::Pow:
      return make_mul(make_mul(make_constant(e->exponent), make_pow(e->lhs, e->exponent - 1.0)),
                      differentiate(e->lhs));
    case Expr::Kind::Ln: return make_div(differentiate(e->lhs), e->lhs);
    case Expr::Kind::Exp: return make_mul(make_exp(e->lhs), differentiate(e->lhs));
    case Expr::Kind::Sqrt:
      return make_div(differentiate(e->lhs), make_mul(make_constant(2.0), make_sqrt(e->lhs)));
  }
  throw Error(errc::invalid_argument, "malformed expression node");
}

double evaluate(const ExprPtr& e, double x) {
  switch (e->kind) {
    case Expr::Kind::Constant: return e->value;
    case Expr::Kind::Variable: return x;
    case Expr::Kind::Add: return evaluate(e->lhs, x) + evaluate(e->rhs, x);
    case Expr::Kind::Sub: return evaluate(e->lhs, x) - evaluate(e->rhs, x);
    case Expr::Kind::Mul: return evaluate(e->lhs, x) * evaluate(e->rhs, x);
    case Expr::Kind::Div: return evaluate(e->lhs, x) / evaluate(e->rhs, x);
    case Expr::Kind::Neg: return -evaluate(e->lhs, x);
    case Expr::Kind::Pow: return std::pow(evaluate(e->lhs, x), e->exponent);
    case Expr::Kind::Ln: return std::log(evaluate(e->lhs, x));
    case Expr::Kind::Exp: return std::exp(evaluate(e->lhs, x));
    case Expr::Kind::Sqrt: return std::sqrt(evaluate(e->lhs, x));
  }
  throw Error(errc::invalid_argument, "malformed expression node");
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Constant: return a->value == b->value;
    case Expr::Kind::Variable: return true;
    case Expr::Kind::Pow:
      return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case Expr::Kind::Neg:
    case Expr::Kind::Ln:
    case Expr::Kind::Exp:
    case Expr::Kind::Sqrt: return structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

}  // namespace hm
