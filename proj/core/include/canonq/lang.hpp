#pragma once

// Expression language for phase-space functions and operators.
//
//   expr   := term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := atom ("^" uint)?  |  "-" factor
//   atom   := rational | "i" | "hbar" | ident | "(" expr ")"
//   ident  := ("q" | "p" | "Dq" | "Dp") uint?
//
// rational is `digits` or `digits/digits`. Both ASCII '-' and U+2212 are
// accepted as minus. Variables are one-based (q1, p1, ...); bare q/p/Dq/Dp are
// allowed only when n == 1.
//
// In the commutative context only q and p are variables. In the operator
// context `*` is noncommutative and the meaning of identifiers depends on the
// realisation:
//   Schrodinger: q = position, Dq = d/dq, p = -i hbar Dq (Dp is unknown)
//   PhaseSpace:  q, p = positions, Dq, Dp = derivatives

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "canonq/algebra.hpp"
#include "canonq/weyl.hpp"

namespace canonq {

enum class Context { Commutative, Operator };

struct Expr {
  enum class Kind { Number, ImaginaryUnit, Hbar, Variable, Add, Sub, Mul, Pow, Neg };
  enum class Var { Q, P, DQ, DP };

  Kind kind = Kind::Number;
  Rational value{0};      ///< Number
  Var var = Var::Q;       ///< Variable
  int index = 0;          ///< Variable, zero-based
  unsigned exponent = 0;  ///< Pow
  std::vector<Expr> children;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Parses `src`; throws ParseError with the position of the offending token.
Expr parse(std::string_view src, Context context, int n);

/// Smallest n that makes every identifier in `src` valid (bare names count as 1).
/// Lexical errors are reported by parse(), not here.
int infer_dof(std::string_view src);

PhasePoly elaborate_poly(const Expr& e, int n);
WeylOp elaborate_operator(const Expr& e, int n, OperatorSpace space);

PhasePoly parse_poly(std::string_view src, int n);
WeylOp parse_operator(std::string_view src, int n, OperatorSpace space);

/// Fully parenthesised where needed; parse(print(e)) reproduces the same value.
std::string to_string(const Expr& e, int n);

/// Canonical text: graded-lex order (highest first), exact rationals, hbar spelled out.
std::string to_string(const GaussRational& c);
std::string to_string(const HbarPoly& c);
std::string to_string(const PhasePoly& f);

enum class OperatorStyle {
  Derivative,  ///< words printed as q^a*Dq^b (canonical)
  Momentum,    ///< Schrodinger only: terms divisible by (-i hbar)^|b| printed as q^a*p^b
};

std::string to_string(const WeylOp& a, OperatorStyle style = OperatorStyle::Derivative);

}  // namespace canonq
