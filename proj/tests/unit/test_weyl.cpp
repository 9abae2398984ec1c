#include <gtest/gtest.h>

#include "canonq/errors.hpp"
#include "canonq/lang.hpp"
#include "canonq/sampling.hpp"
#include "canonq/weyl.hpp"
#include "oracles.hpp"

using namespace canonq;

namespace {

WeylOp S(const char* src, int n = 1) { return parse_operator(src, n, OperatorSpace::Schrodinger); }

const WeylOp q = WeylOp::q_hat(1, 0);
const WeylOp p = WeylOp::p_hat(1, 0);
const HbarPoly i_hbar = HbarPoly::term(1, GaussRational::i());

}  // namespace

TEST(WeylMul, Examples) {
  const WeylOp d = WeylOp::derivative(1, 0), x = WeylOp::position(1, 0);
  EXPECT_EQ(d * x, x * d + WeylOp::identity(1));
  EXPECT_EQ(q * p, S("-i*hbar*q*Dq"));
  EXPECT_EQ(p * q, S("-i*hbar*q*Dq - i*hbar"));
  EXPECT_EQ(p * q, q * p - WeylOp::scalar(1, i_hbar));
}

TEST(WeylMul, MixedRealisationsAreRejected) {
  EXPECT_THROW(q * WeylOp::q_hat(2, 0), DimensionMismatch);
  EXPECT_THROW(WeylOp::position(2, 0, OperatorSpace::PhaseSpace) * WeylOp::position(2, 0), DimensionMismatch);
}

TEST(WeylMul, ConfluentUnderRandomRewriteOrders) {
  std::mt19937_64 strategy(99);
  for (unsigned c = 0; c < 500; ++c) {
    Rng rng = case_rng(2024, c);
    OpSpec spec;
    spec.positions = 1 + static_cast<int>(c % 3);
    const WeylOp a = random_op(rng, spec), b = random_op(rng, spec);
    const WeylOp expected = a * b;
    EXPECT_EQ(oracle::rewrite_product(a, b, strategy), expected);
    EXPECT_EQ(oracle::rewrite_product(a, b, strategy), expected);
  }
}

TEST(WeylMul, ActsAsCompositionOnPolynomials) {
  for (unsigned c = 0; c < 200; ++c) {
    Rng rng = case_rng(77, c);
    const bool phase = c % 2 == 1;
    const int n = 1 + static_cast<int>(c % 2);
    OpSpec spec;
    spec.positions = phase ? 2 * n : n;
    WeylOp a = random_op(rng, spec), b = random_op(rng, spec);
    if (phase) {
      WeylOp pa(spec.positions, OperatorSpace::PhaseSpace), pb(spec.positions, OperatorSpace::PhaseSpace);
      for (const auto& [w, k] : a.terms()) pa.add_term(w, k);
      for (const auto& [w, k] : b.terms()) pb.add_term(w, k);
      a = pa;
      b = pb;
    }
    PolySpec ps;
    ps.n = n;
    ps.max_degree = 5;
    PhasePoly psi = random_poly(rng, ps);
    if (!phase) {  // Schrodinger wave functions depend on q only
      PhasePoly only_q(n);
      for (const auto& [e, k] : psi.terms()) {
        Exponents f = e;
        for (int j = 0; j < n; ++j) f[static_cast<std::size_t>(n + j)] = 0;
        only_q += PhasePoly::monomial(n, f, k);
      }
      psi = only_q;
    }
    EXPECT_EQ(oracle::act(a * b, psi), oracle::act(a, oracle::act(b, psi)));
  }
}

TEST(WeylCommutator, Examples) {
  EXPECT_EQ(commutator(q, p), WeylOp::scalar(1, i_hbar));
  EXPECT_EQ(commutator(pow(q, 3), p), WeylOp::scalar(1, i_hbar * HbarPoly(3)) * pow(q, 2));
  const WeylOp lhs = commutator(pow(q, 2), pow(p, 2)).divide_by_i_hbar() * HbarPoly(GaussRational(Rational(1, 4)));
  EXPECT_EQ(lhs, (q * p + p * q) * HbarPoly(GaussRational(Rational(1, 2))));
}

TEST(WeylCommutator, HbarFreeGeneratorsAreDivisible) {
  // Polynomials in q^ and p^ with hbar-free coefficients: the commutator is
  // always divisible by i hbar.
  for (unsigned c = 0; c < 200; ++c) {
    Rng rng = case_rng(5150, c);
    auto poly = [&] {
      WeylOp out(1);
      for (int t = 0; t < 3; ++t) {
        WeylOp word = WeylOp::scalar(1, HbarPoly(GaussRational(random_rational(rng, 5))));
        const int len = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int k = 0; k < len; ++k) word = word * (rng() % 2 ? q : p);
        out += word;
      }
      return out;
    };
    const WeylOp a = poly(), b = poly();
    EXPECT_NO_THROW(lie_bracket(a, b));
  }
  EXPECT_THROW(WeylOp::identity(1).divide_by_i_hbar(), NotDivisible);
}

TEST(WeylAdjoint, Examples) {
  EXPECT_EQ(adjoint(q * p), p * q);
  EXPECT_EQ(adjoint(WeylOp::derivative(1, 0)), -WeylOp::derivative(1, 0));
  const WeylOp sym = S("-i*hbar*(q + q^2*Dq)");
  EXPECT_EQ(adjoint(sym), sym);
  EXPECT_TRUE(is_symmetric(sym));
  EXPECT_EQ(adjoint(WeylOp::scalar(1, GaussRational::i())), WeylOp::scalar(1, -GaussRational::i()));
}

TEST(WeylSymmetrise, Examples) {
  const HbarPoly half(GaussRational(Rational(1, 2)));
  EXPECT_EQ(symmetrise(q * p), (q * p + p * q) * half);
  EXPECT_EQ(symmetrise(q * q), q * q);
  EXPECT_TRUE(symmetrise(WeylOp::scalar(1, i_hbar)).is_zero());
}

TEST(Sl2Triple, Examples) {
  const HbarPoly half(GaussRational(Rational(1, 2)));
  const WeylOp h = (q * p + p * q) * half, ep = p * p * half, em = -(q * q) * half;
  EXPECT_TRUE(check_sl2_triple(h, ep, em));
  EXPECT_TRUE(check_sl2_triple(WeylOp(1), WeylOp(1), WeylOp(1)));
  EXPECT_FALSE(check_sl2_triple(q, p, p));
}

TEST(Schrodinger, CanonicalCommutationRelations) {
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const WeylOp qi = WeylOp::q_hat(n, i), qj = WeylOp::q_hat(n, j);
        const WeylOp pi = WeylOp::p_hat(n, i), pj = WeylOp::p_hat(n, j);
        EXPECT_TRUE(commutator(qi, qj).is_zero());
        EXPECT_TRUE(commutator(pi, pj).is_zero());
        EXPECT_EQ(commutator(qi, pj), i == j ? WeylOp::scalar(n, i_hbar) : WeylOp(n));
      }
}

TEST(PhaseSpaceOps, MultiplicationAndPositions) {
  const PhasePoly f = parse_poly("q*p^2", 1);
  const WeylOp m = WeylOp::multiplication(f);
  EXPECT_EQ(m.positions(), 2);
  EXPECT_EQ(m.space(), OperatorSpace::PhaseSpace);
  EXPECT_EQ(oracle::act(m, parse_poly("q + 1", 1)), parse_poly("q^2*p^2 + q*p^2", 1));
  EXPECT_THROW(WeylOp::of_position_poly(parse_poly("q*p", 1)), DomainViolation);
}
