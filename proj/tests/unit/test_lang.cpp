#include <gtest/gtest.h>

#include "canonq/errors.hpp"
#include "canonq/lang.hpp"
#include "canonq/sampling.hpp"

using namespace canonq;

namespace {

std::size_t error_column(const char* src, Context ctx = Context::Commutative, int n = 1) {
  try {
    parse(src, ctx, n);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST(Parse, PolynomialExample) {
  const Expr e = parse("q^2*p + 3/2*p", Context::Commutative, 1);
  EXPECT_EQ(e.kind, Expr::Kind::Add);
  const PhasePoly f = elaborate_poly(e, 1);
  EXPECT_EQ(f, PhasePoly::monomial(1, {2, 1}) + PhasePoly::monomial(1, {0, 1}, GaussRational(Rational(3, 2))));
  EXPECT_EQ(to_string(f), "q^2*p + (3/2)*p");
}

TEST(Parse, OperatorExampleNormalOrders) {
  EXPECT_EQ(to_string(parse_operator("Dq*q", 1, OperatorSpace::Schrodinger)), "q*Dq + 1");
  EXPECT_EQ(parse_operator("p", 1, OperatorSpace::Schrodinger), WeylOp::p_hat(1, 0));
  EXPECT_EQ(to_string(parse_operator("Dp*p - p*Dp", 1, OperatorSpace::PhaseSpace)), "1");
}

TEST(Parse, RejectsNegativeExponent) {
  EXPECT_THROW(parse("q^-1", Context::Commutative, 1), ParseError);
  EXPECT_EQ(error_column("q^-1"), 3u);
  EXPECT_THROW(parse("q^(2)", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse("q^1/2", Context::Commutative, 1), ParseError);
}

TEST(Parse, ReportsLineAndColumn) {
  try {
    parse("q +\n  r", Context::Commutative, 1);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Parse, UnknownAndMisplacedVariables) {
  EXPECT_THROW(parse("x", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse("q", Context::Commutative, 2), ParseError);
  EXPECT_THROW(parse("q3", Context::Commutative, 2), ParseError);
  EXPECT_THROW(parse("q0", Context::Commutative, 2), ParseError);
  EXPECT_THROW(parse("Dq", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse_operator("Dp", 1, OperatorSpace::Schrodinger), ParseError);
  EXPECT_THROW(parse("1/0", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse("(q + p", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse("q p", Context::Commutative, 1), ParseError);
  EXPECT_THROW(parse("", Context::Commutative, 1), ParseError);
}

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  EXPECT_EQ(parse_poly("-q^2", 1), -PhasePoly::monomial(1, {2, 0}));
  EXPECT_EQ(parse_poly("(-q)^2", 1), PhasePoly::monomial(1, {2, 0}));
  EXPECT_EQ(parse_poly("\xE2\x88\x92q", 1), parse_poly("-q", 1));
}

TEST(Parse, InferDof) {
  EXPECT_EQ(infer_dof("q + p"), 1);
  EXPECT_EQ(infer_dof("q2 + p3^2"), 3);
  EXPECT_EQ(infer_dof("Dq4*q1"), 4);
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(to_string(PhasePoly(1)), "0");
  EXPECT_EQ(to_string(parse_poly("-1/3*hbar^2", 1)), "-(1/3)*hbar^2");
  EXPECT_EQ(to_string(parse_poly("p1*q2 + q1^2", 2)), "q1^2 + q2*p1");
  EXPECT_EQ(to_string(parse_operator("2*i*hbar*q*Dq", 1, OperatorSpace::Schrodinger)), "2*i*hbar*q*Dq");
  EXPECT_EQ(to_string(parse_operator("q*p", 1, OperatorSpace::Schrodinger), OperatorStyle::Momentum), "q*p");
  EXPECT_EQ(to_string(GaussRational(Rational(-2, 3), Rational(1))), "-(2/3) + i");
}

TEST(RoundTrip, RandomPolynomials) {
  for (unsigned c = 0; c < 1000; ++c) {
    Rng rng = case_rng(31337, c);
    PolySpec spec;
    spec.n = 1 + static_cast<int>(c % 3);
    spec.max_degree = 6;
    spec.with_hbar = true;
    spec.with_imaginary = true;
    const PhasePoly f = random_poly(rng, spec);
    const std::string text = to_string(f);
    EXPECT_EQ(parse_poly(text, spec.n), f) << text;
    const Expr e = parse(text, Context::Commutative, spec.n);
    EXPECT_EQ(elaborate_poly(parse(to_string(e, spec.n), Context::Commutative, spec.n), spec.n), f) << text;
  }
}

TEST(RoundTrip, RandomOperators) {
  for (unsigned c = 0; c < 1000; ++c) {
    Rng rng = case_rng(4242, c);
    OpSpec spec;
    spec.positions = 1 + static_cast<int>(c % 2);
    const WeylOp a = random_op(rng, spec);
    const std::string text = to_string(a);
    EXPECT_EQ(parse_operator(text, spec.positions, OperatorSpace::Schrodinger), a) << text;
  }
}

TEST(RoundTrip, MomentumStyleReparses) {
  for (unsigned c = 0; c < 300; ++c) {
    Rng rng = case_rng(808, c);
    OpSpec spec;
    const WeylOp a = random_op(rng, spec);
    const std::string text = to_string(a, OperatorStyle::Momentum);
    EXPECT_EQ(parse_operator(text, 1, OperatorSpace::Schrodinger), a) << text;
  }
}
