// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "core/errors.hpp"

namespace hm {

// AST for generator expressions in one variable x. Exponents are constants
// only, so symbolic differentiation stays closed under the node set.
//
// Grammar (see README):
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := unary ("^" signed_number)? ;
//   unary  := "-" unary | atom ;
//   atom   := number | "x" | "e" | "pi" | ("ln"|"exp"|"sqrt") "(" expr ")" | "(" expr ")" ;
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Ln, Exp, Sqrt };

  Kind kind;
  double value = 0.0;     // Constant
  double exponent = 0.0;  // Pow
  ExprPtr lhs;            // binary lhs / unary child
  ExprPtr rhs;            // binary rhs
};

ExprPtr make_constant(double v);
ExprPtr make_variable();

// Simplifying constructors: constant folding plus 0/1 identities.
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_pow(ExprPtr base, double exponent);
ExprPtr make_ln(ExprPtr a);
ExprPtr make_exp(ExprPtr a);
ExprPtr make_sqrt(ExprPtr a);

// Throws SyntaxError (with byte position) or NonConstantExponent.
ExprPtr parse_expression(const std::string& text);

// Canonical text form; parse(print(e)) is structurally equal to e.
std::string print_expression(const ExprPtr& e);

ExprPtr differentiate(const ExprPtr& e);

double evaluate(const ExprPtr& e, double x);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace hm
