// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "canonq/cli.hpp"
#include "canonq/constraints.hpp"
#include "canonq/dynamics.hpp"
#include "canonq/lang.hpp"
#include "canonq/laws.hpp"
#include "canonq/matrixlab.hpp"
#include "canonq/quantise.hpp"
#include "canonq/sampling.hpp"
#include "oracles.hpp"

using namespace canonq;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < limit_s, "over time limit");
  if (!out.ok) ++failures;
  std::printf("%s  %d. %s  (%.3f s, limit %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name, secs, limit_s,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

WeylOp S(const char* src) { return parse_operator(src, 1, OperatorSpace::Schrodinger); }

void suite_ok(Outcome& out, const LawReport& rep, std::initializer_list<const char*> required) {
  for (const char* law : required) out.require(rep.find(law) != nullptr, rep.suite + "/" + law + " missing");
  for (const auto& r : rep.results) {
    out.require(r.cases == 1000, rep.suite + "/" + r.law + " ran " + std::to_string(r.cases) + " cases");
    out.require(r.passed, rep.suite + "/" + r.law + ": " + r.counterexample.value_or(""));
  }
}

bool same(const LawReport& a, const LawReport& b) {
  if (a.results.size() != b.results.size()) return false;
  for (std::size_t k = 0; k < a.results.size(); ++k)
    if (a.results[k].passed != b.results[k].passed || a.results[k].counterexample != b.results[k].counterexample)
      return false;
  return true;
}

}  // namespace

int main() {
  criterion(1, "GvH contradiction, exact routes and discrepancy", 1, [](Outcome& out) {
    const auto rep = cli::run_cli({"--format", "json", "gvh", "demo"});
    out.require(rep.exit_code == 0, "gvh demo exit code");
    const auto& res = rep.record["result"];
    out.require(res["route_a"] == "q^2*p^2 - 2*i*hbar*q*p - (2/3)*hbar^2", "route_a text");
    out.require(res["route_b"] == "q^2*p^2 - 2*i*hbar*q*p - (1/3)*hbar^2", "route_b text");
    out.require(res["discrepancy"] == "-(1/3)*hbar^2", "discrepancy text");
    const GvhReport g = gvh_contradiction();
    out.require(g.route_a == S("q^2*p^2 - 2*i*hbar*q*p - 2/3*hbar^2"), "route_a operator");
    out.require(g.route_b == S("q^2*p^2 - 2*i*hbar*q*p - 1/3*hbar^2"), "route_b operator");
    out.require(g.discrepancy == WeylOp::scalar(1, HbarPoly::term(2, GaussRational(Rational(-1, 3)))),
                "discrepancy operator");
  });

  criterion(2, "Squaring-law chain for q^2, q^3, p^2, p^3", 1, [](Outcome& out) {
    for (unsigned k : {2u, 3u}) {
      out.require(check_generalized_squaring(k, SquaringLaw::PositionPower), "q^" + std::to_string(k));
      out.require(check_generalized_squaring(k, SquaringLaw::MomentumPower), "p^" + std::to_string(k));
    }
    for (unsigned k = 0; k <= 2; ++k) {
      out.require(check_generalized_squaring(k, SquaringLaw::PositionLinear), "q^k p, k=" + std::to_string(k));
      out.require(check_generalized_squaring(k, SquaringLaw::MomentumLinear), "p^k q, k=" + std::to_string(k));
    }
  });

  criterion(3, "sl(2) relations for e+ = p^2/2, e- = -q^2/2, h = (qp+pq)/2", 1, [](Outcome& out) {
    const WeylOp q = WeylOp::q_hat(1, 0), p = WeylOp::p_hat(1, 0);
    const HbarPoly half(GaussRational(Rational(1, 2)));
    const WeylOp h = (q * p + p * q) * half, ep = p * p * half, em = -(q * q * half);
    out.require(check_sl2_triple(h, ep, em), "check_sl2_triple");
    out.require(lie_bracket(h, ep) == ep * HbarPoly(2), "[h,e+]/i hbar = 2e+");
    out.require(lie_bracket(h, em) == em * HbarPoly(-2), "[h,e-]/i hbar = -2e-");
    out.require(lie_bracket(ep, em) == h, "[e+,e-]/i hbar = h");
  });

  criterion(4, "Poisson and Weyl law suites, 1000 cases each, seed-reproducible", 30, [](Outcome& out) {
    const LawReport p = poisson_law_suite(1000, 1);
    const LawReport w = weyl_law_suite(1000, 1);
    suite_ok(out, p, {"antisymmetry", "bilinearity", "jacobi", "leibniz", "field-homomorphism", "grading"});
    suite_ok(out, w, {"commutator-antisymmetry", "commutator-bilinearity", "commutator-jacobi", "derivation-rule"});
    out.require(same(p, poisson_law_suite(1000, 1)), "poisson suite not reproducible");
    out.require(same(w, weyl_law_suite(1000, 1)), "weyl suite not reproducible");
  });

  criterion(5, "Map contracts on 200 random pairs", 60, [](Outcome& out) {
    for (MapKind kind : {MapKind::Quadratic, MapKind::SchrodingerLinear}) {
      const AxiomReport rep = check_axiom_suite({kind, 1}, 200, 1);
      for (const char* axiom : {"linearity", "unit", "symmetry", "homomorphism", "schrodinger-consistency"}) {
        const AxiomResult* r = rep.find(axiom);
        out.require(r != nullptr && r->passed, std::string(to_string(kind)) + "/" + axiom);
      }
    }
    const AxiomReport pre = check_axiom_suite({MapKind::Prequant, 1}, 200, 1);
    out.require(pre.find("homomorphism") && pre.find("homomorphism")->passed, "prequant homomorphism");
    out.require(pre.find("schrodinger-consistency") && !pre.find("schrodinger-consistency")->passed,
                "prequant should fail schrodinger-consistency");
    // Direct homomorphism check on 200 pairs of degree up to 6.
    const QuantMap map{MapKind::Prequant, 1};
    PolySpec spec;
    spec.n = 1;
    spec.max_degree = 6;
    spec.with_hbar = true;
    spec.with_imaginary = true;
    unsigned bad = 0;
    for (unsigned c = 0; c < 200; ++c) {
      Rng rng = case_rng(2024, c);
      if (!check_homomorphism(map, random_poly(rng, spec), random_poly(rng, spec))) ++bad;
    }
    out.require(bad == 0, std::to_string(bad) + " prequant homomorphism failures in degree <= 6");
  });

  criterion(6, "Prequantum oscillator spectrum on [-3.2, 3.2]", 5, [](Outcome& out) {
    for (double r : {0.0, 1.0, 5.0}) {
      const auto pts = spectrum_scan(-3.2, 3.2, 0.05, r, 1.0, 1e-9);
      bool exact = pts.size() == 7;
      for (std::size_t k = 0; exact && k < pts.size(); ++k)
        exact = std::abs(pts[k].E - (static_cast<double>(k) - 3.0)) < 1e-9 && pts[k].defect < 1e-9;
      out.require(exact, "accepted set differs from {-3..3} at r = " + std::to_string(r));
    }
    const MonodromyResult half = monodromy(0.5, 1.0, 1.0, 1e-9);
    out.require(!half.single_valued, "E = 0.5 accepted");
    out.require(std::abs(half.defect - 2.0) < 1e-6, "defect at E = 0.5 is " + std::to_string(half.defect));
  });

  criterion(7, "Incomplete flow of q^2 p from (1,1)", 1, [](Outcome& out) {
    const PhasePoly f = parse_poly("q^2*p", 1);
    const FlowResult a = integrate_flow(f, {1.0, 1.0}, 0.9, 1e-10);
    out.require(a.status == FlowStatus::Completed, "flow to t = 0.9 did not complete");
    for (const auto& s : a.samples) {
      const double q = 1.0 / (1.0 - s.t), p = (1.0 - s.t) * (1.0 - s.t);
      if (std::abs(s.q[0] - q) / q > 1e-6 || std::abs(s.p[0] - p) / p > 1e-6) {
        out.require(false, "trajectory off at t = " + std::to_string(s.t));
        break;
      }
    }
    const FlowResult b = integrate_flow(f, {1.0, 1.0}, 2.0, 1e-10);
    out.require(b.status == FlowStatus::Blowup, "no BLOWUP for horizon 2");
    out.require(b.t_star_estimate && *b.t_star_estimate >= 0.99 && *b.t_star_estimate <= 1.01,
                "t* outside [0.99, 1.01]");
  });

  criterion(8, "Linear constraint examples in R^4", 1, [](Outcome& out) {
    auto P = [](const char* s) { return parse_poly(s, 2); };
    const ConstraintSet gauge = make_constraint_set({P("p1")});
    const ConstraintReport a = first_class_check(gauge);
    out.require(a.first_class && a.exact, "{p1} first-class");
    out.require(coisotropy_check_linear({P("p1")}, 2).coisotropic, "{p1} coisotropic");
    const ConstraintReport b = first_class_check(make_constraint_set({P("q1"), P("p1")}));
    out.require(!b.first_class && b.exact, "{q1, p1} not first-class");
    out.require(!b.witnesses.empty() && b.witnesses[0].bracket == "1", "{q1, p1} witness bracket");
    const MembershipResult m2 = idealiser_member(P("q2"), gauge);
    const MembershipResult m1 = idealiser_member(P("q1"), gauge);
    out.require(m2.member && m2.exact, "q2 idealiser member");
    out.require(!m1.member && m1.exact, "q1 not an idealiser member");
  });

  criterion(9, "sl(2) basis, simplicity and uncertainty", 10, [](Outcome& out) {
    out.require(check_sl2_basis().exact(), "basis relations");
    unsigned probes = 0;
    for (unsigned c = 0; c < 1000; ++c) {
      Rng rng = case_rng(9, c);
      std::normal_distribution<double> g;
      double x = g(rng), y = g(rng), z = g(rng);
      if (simplicity_probe(x, y, z) == 3) ++probes;
    }
    out.require(probes == 1000, std::to_string(1000 - probes) + " probes below 3");
    const UncertaintyTrials t = uncertainty_trials(2, 6, 1000, 1, 1e-9);
    out.require(t.trials == 1000 && t.passed == 1000, std::to_string(t.trials - t.passed) + " uncertainty failures");
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
