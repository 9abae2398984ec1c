#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "canonq/dynamics.hpp"
#include "canonq/lang.hpp"
#include "canonq/sampling.hpp"

using namespace canonq;

namespace {

PhasePoly P(const char* src, int n = 1) { return parse_poly(src, n); }

double analytic_defect(double E, double hbar) {
  return std::abs(std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * E / hbar)) - 1.0);
}

std::vector<double> energies(const std::vector<SpectrumPoint>& pts) {
  std::vector<double> out;
  for (const auto& s : pts) out.push_back(s.E);
  return out;
}

}  // namespace

TEST(Flow, IncompleteExampleMatchesClosedForm) {
  const FlowResult r = integrate_flow(P("q^2*p"), {1.0, 1.0}, 0.9, 1e-10);
  EXPECT_EQ(r.status, FlowStatus::Completed);
  ASSERT_GE(r.samples.size(), 2u);
  for (const auto& s : r.samples) {
    const double q = 1.0 / (1.0 - s.t), p = (1.0 - s.t) * (1.0 - s.t);
    EXPECT_LT(std::abs(s.q[0] - q) / q, 1e-6) << s.t;
    EXPECT_LT(std::abs(s.p[0] - p) / p, 1e-6) << s.t;
  }
  EXPECT_NEAR(r.final_state().t, 0.9, 1e-12);
}

TEST(Flow, IncompleteExampleBlowsUp) {
  const FlowResult r = integrate_flow(P("q^2*p"), {1.0, 1.0}, 2.0, 1e-10);
  ASSERT_EQ(r.status, FlowStatus::Blowup);
  ASSERT_TRUE(r.t_star_estimate.has_value());
  EXPECT_GE(*r.t_star_estimate, 0.99);
  EXPECT_LE(*r.t_star_estimate, 1.01);
  ASSERT_TRUE(r.t_star_bracket.has_value());
  EXPECT_LE(r.t_star_bracket->first, r.t_star_bracket->second);
  EXPECT_LE(*r.t_star_estimate, 2.0);
}

TEST(Flow, BlowupTimeScalesWithInitialPosition) {
  for (double q0 : {0.5, 2.0, 4.0}) {
    const FlowResult r = integrate_flow(P("q^2*p"), {q0, 1.0}, 3.0, 1e-10);
    ASSERT_EQ(r.status, FlowStatus::Blowup) << q0;
    EXPECT_NEAR(*r.t_star_estimate, 1.0 / q0, 0.01 / q0) << q0;
  }
}

TEST(Flow, MomentumOnlyHamiltonianFreezesMomentum) {
  const FlowResult r = integrate_flow(P("p^3"), {0.3, -1.2}, 2.0, 1e-10);
  EXPECT_EQ(r.status, FlowStatus::Completed);
  for (const auto& s : r.samples) EXPECT_DOUBLE_EQ(s.p[0], -1.2);
  EXPECT_NEAR(r.final_state().q[0], 0.3 + 3 * 1.44 * 2.0, 1e-9);
}

TEST(Flow, LinearHyperbolicFlow) {
  const FlowResult r = integrate_flow(P("q*p"), {1.0, 1.0}, 1.0, 1e-10);
  EXPECT_NEAR(r.final_state().q[0], std::exp(1.0), 1e-6);
  EXPECT_NEAR(r.final_state().p[0], std::exp(-1.0), 1e-6);
}

TEST(Flow, SamplesIncreaseInTime) {
  const FlowResult r = integrate_flow(P("1/2*(p^2 + q^2)"), {1.0, 0.0}, 5.0, 1e-9);
  for (std::size_t k = 1; k < r.samples.size(); ++k) EXPECT_GT(r.samples[k].t, r.samples[k - 1].t);
  EXPECT_NEAR(r.final_state().q[0], std::cos(5.0), 1e-6);
  EXPECT_NEAR(r.final_state().p[0], -std::sin(5.0), 1e-6);
}

TEST(Flow, HbarIsSubstituted) {
  FlowOptions opts;
  opts.hbar = 2.0;
  const FlowResult r = integrate_flow(P("hbar*q*p"), {1.0, 1.0}, 1.0, 1e-10, opts);
  EXPECT_NEAR(r.final_state().q[0], std::exp(2.0), 1e-5);
}

TEST(Flow, EnergyConservedOnRandomCompleteFlows) {
  // Quadratic Hamiltonians in 1 and 2 degrees of freedom with positive-definite sum of squares form.
  for (unsigned c = 0; c < 20; ++c) {
    Rng rng = case_rng(71, c);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 1 + static_cast<int>(c % 2);
    std::string src = n == 1 ? "p^2 + q^2 + 1/3*q*p" : "p1^2 + p2^2 + q1^2 + q2^2 + 1/4*q1*p2";
    std::vector<double> z0(static_cast<std::size_t>(2 * n));
    for (auto& x : z0) x = u(rng);
    const double tol = 1e-9;
    const FlowResult r = integrate_flow(parse_poly(src, n), z0, 3.0, tol);
    ASSERT_EQ(r.status, FlowStatus::Completed);
    EXPECT_LT(r.energy_drift, 100 * tol);
  }
}

TEST(Flow, Composition) {
  const PhasePoly f = P("1/2*p^2 + 1/4*q^4");
  for (unsigned c = 0; c < 10; ++c) {
    Rng rng = case_rng(72, c);
    std::uniform_real_distribution<double> u(-1.0, 1.0), t(0.2, 1.5);
    const std::vector<double> z0{u(rng), u(rng)};
    const double t1 = t(rng), t2 = t(rng);
    const FlowSample whole = integrate_flow(f, z0, t1 + t2, 1e-11).final_state();
    const FlowSample a = integrate_flow(f, z0, t1, 1e-11).final_state();
    const FlowSample b = integrate_flow(f, {a.q[0], a.p[0]}, t2, 1e-11).final_state();
    EXPECT_NEAR(whole.q[0], b.q[0], 1e-7);
    EXPECT_NEAR(whole.p[0], b.p[0], 1e-7);
  }
}

TEST(Flow, Errors) {
  EXPECT_THROW(integrate_flow(P("q*p"), {1.0, 1.0}, 0.0, 1e-9), std::invalid_argument);
  EXPECT_THROW(integrate_flow(P("q*p"), {1.0, 1.0}, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(integrate_flow(P("q*p"), {1.0}, 1.0, 1e-9), std::invalid_argument);
  EXPECT_THROW(integrate_flow(P("i*q*p"), {1.0, 1.0}, 1.0, 1e-9), std::invalid_argument);
}

TEST(Monodromy, Examples) {
  EXPECT_TRUE(monodromy(3.0, 2.0, 1.0, 1e-9).single_valued);
  const MonodromyResult zero = monodromy(0.0, 1.0, 1.0, 1e-9);
  EXPECT_TRUE(zero.single_valued);
  EXPECT_LT(zero.defect, 1e-9);
  const MonodromyResult half = monodromy(0.5, 1.0, 1.0, 1e-9);
  EXPECT_FALSE(half.single_valued);
  EXPECT_NEAR(half.defect, 2.0, 1e-6);
}

TEST(Monodromy, MatchesAnalyticDefect) {
  for (unsigned c = 0; c < 50; ++c) {
    Rng rng = case_rng(73, c);
    std::uniform_real_distribution<double> e(-4.0, 4.0), r(0.0, 5.0), h(0.5, 2.0);
    const double E = e(rng), hbar = h(rng);
    const MonodromyResult m = monodromy(E, r(rng), hbar, 1e-10);
    EXPECT_NEAR(m.defect, analytic_defect(E, hbar), 1e-7) << E << " " << hbar;
    EXPECT_LT(m.modulus_drift, 1e-10);
  }
}

TEST(Monodromy, QuantisedInUnitsOfHbar) {
  for (int n = -3; n <= 3; ++n) EXPECT_TRUE(monodromy(0.5 * n, 3.0, 0.5, 1e-9).single_valued) << n;
  EXPECT_FALSE(monodromy(0.25, 3.0, 0.5, 1e-9).single_valued);
}

TEST(Monodromy, Errors) {
  EXPECT_THROW(monodromy(1.0, 1.0, 0.0, 1e-9), std::invalid_argument);
  EXPECT_THROW(monodromy(1.0, 1.0, 1.0, -1.0), std::invalid_argument);
}

TEST(SpectrumScan, SymmetricWindow) {
  const auto pts = spectrum_scan(-3.2, 3.2, 0.05, 1.0, 1.0, 1e-9);
  const std::vector<double> es = energies(pts);
  ASSERT_EQ(es.size(), 7u);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(es[static_cast<std::size_t>(k)], k - 3, 1e-6);
  for (const auto& s : pts) EXPECT_LT(s.defect, 1e-9);
}

TEST(SpectrumScan, Windows) {
  EXPECT_TRUE(spectrum_scan(0.1, 0.9, 0.05, 1.0, 1.0, 1e-9).empty());
  const auto neg = energies(spectrum_scan(-1.05, -0.95, 0.01, 1.0, 1.0, 1e-9));
  ASSERT_EQ(neg.size(), 1u);
  EXPECT_NEAR(neg[0], -1.0, 1e-6);
}

TEST(SpectrumScan, IndependentOfRadius) {
  const auto base = energies(spectrum_scan(-2.2, 2.2, 0.05, 0.0, 1.0, 1e-9));
  for (double r : {1.0, 5.0}) {
    const auto other = energies(spectrum_scan(-2.2, 2.2, 0.05, r, 1.0, 1e-9));
    ASSERT_EQ(other.size(), base.size()) << r;
    for (std::size_t k = 0; k < base.size(); ++k) EXPECT_NEAR(other[k], base[k], 1e-6);
  }
}

TEST(SpectrumScan, Errors) {
  EXPECT_THROW(spectrum_scan(0.0, 1.0, 0.0, 1.0, 1.0, 1e-9), std::invalid_argument);
  EXPECT_THROW(spectrum_scan(1.0, 0.0, 0.1, 1.0, 1.0, 1e-9), std::invalid_argument);
}

TEST(SchrodingerOscillator, HalfIntegerLevels) {
  const std::vector<double> levels = schrodinger_oscillator_levels(5, 1.0);
  ASSERT_EQ(levels.size(), 5u);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(levels[static_cast<std::size_t>(n)], n + 0.5, 1e-3);
  const std::vector<double> scaled = schrodinger_oscillator_levels(3, 0.5);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(scaled[static_cast<std::size_t>(n)], 0.5 * (n + 0.5), 1e-3);
}
