#include "canonq/laws.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "canonq/lang.hpp"
#include "canonq/poisson.hpp"
#include "canonq/sampling.hpp"
#include "canonq/weyl.hpp"

namespace canonq {

bool LawReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const LawResult& r) { return r.passed; });
}

const LawResult* LawReport::find(std::string_view law) const {
  for (const auto& r : results)
    if (r.law == law) return &r;
  return nullptr;
}

namespace {

/// A law receives its own stream and returns an explanation on failure.
using Law = std::function<std::optional<std::string>(Rng&)>;

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, unsigned cases, std::uint64_t seed) : cases_(cases) {
    report_.suite = std::move(suite);
    report_.seed = seed;
  }

  void run(std::string name, const Law& law) {
    const std::uint64_t law_seed = derive_seed(report_.seed, report_.results.size());
    LawResult r{std::move(name), 0, true, std::nullopt};
    for (unsigned c = 0; c < cases_; ++c) {
      Rng rng = case_rng(law_seed, c);
      ++r.cases;
      if (auto why = law(rng)) {
        r.passed = false;
        r.counterexample = std::move(why);
        break;
      }
    }
    report_.results.push_back(std::move(r));
  }

  LawReport take() { return std::move(report_); }

 private:
  unsigned cases_;
  LawReport report_;
};

PolySpec draw_spec(Rng& rng, unsigned max_degree = 6) {
  PolySpec spec;
  spec.n = std::uniform_int_distribution<int>(1, 3)(rng);
  spec.max_degree = max_degree;
  spec.max_terms = 4;
  spec.with_hbar = true;
  spec.with_imaginary = true;
  return spec;
}

std::string show(std::initializer_list<const PhasePoly*> polys) {
  std::string out;
  const char* names[] = {"f", "g", "h"};
  int k = 0;
  for (const PhasePoly* f : polys) {
    if (!out.empty()) out += ", ";
    out += std::string(names[k++]) + " = " + to_string(*f);
  }
  return out;
}

std::string show(std::initializer_list<const WeylOp*> ops) {
  std::string out;
  const char* names[] = {"A", "B", "C"};
  int k = 0;
  for (const WeylOp* a : ops) {
    if (!out.empty()) out += ", ";
    out += std::string(names[k++]) + " = " + to_string(*a);
  }
  return out;
}

std::optional<std::string> fail_if(bool bad, std::string why) {
  if (bad) return why;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- ring

LawReport ring_law_suite(unsigned cases, std::uint64_t seed) {
  SuiteRunner runner("ring", cases, seed);
  auto triple = [](Rng& rng) {
    const PolySpec spec = draw_spec(rng);
    return std::array<PhasePoly, 3>{random_poly(rng, spec), random_poly(rng, spec), random_poly(rng, spec)};
  };

  runner.run("commutativity", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(f * g != g * f || f + g != g + f, show({&f, &g}));
  });
  runner.run("associativity", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if((f * g) * h != f * (g * h) || (f + g) + h != f + (g + h), show({&f, &g, &h}));
  });
  runner.run("distributivity", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(f * (g + h) != f * g + f * h, show({&f, &g, &h}));
  });
  runner.run("additive-inverse", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(!(f - f).is_zero() || (f + g) - g != f, show({&f, &g}));
  });
  runner.run("degree-additivity", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if((f * g).degree() != f.degree() + g.degree(), show({&f, &g}));
  });
  runner.run("evaluation-homomorphism", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    std::vector<Rational> point(static_cast<std::size_t>(2 * f.n()));
    for (auto& x : point) x = random_rational(rng, 6);
    const Rational hbar = random_rational(rng, 6);
    const bool ok = (f * g).evaluate(point, hbar) == f.evaluate(point, hbar) * g.evaluate(point, hbar) &&
                    (f + g).evaluate(point, hbar) == f.evaluate(point, hbar) + g.evaluate(point, hbar);
    return fail_if(!ok, show({&f, &g}));
  });
  return runner.take();
}

// ---------------------------------------------------------------- Poisson

LawReport poisson_law_suite(unsigned cases, std::uint64_t seed) {
  SuiteRunner runner("poisson", cases, seed);
  auto triple = [](Rng& rng) {
    const PolySpec spec = draw_spec(rng, 5);
    return std::array<PhasePoly, 3>{random_poly(rng, spec), random_poly(rng, spec), random_poly(rng, spec)};
  };

  runner.run("antisymmetry", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(bracket(f, g) != -bracket(g, f) || !bracket(f, f).is_zero(), show({&f, &g}));
  });
  runner.run("bilinearity", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    const HbarPoly lambda(random_coefficient(rng, 7, true));
    const bool ok = bracket(f, g + h * lambda) == bracket(f, g) + bracket(f, h) * lambda &&
                    bracket(f + h * lambda, g) == bracket(f, g) + bracket(h, g) * lambda;
    return fail_if(!ok, show({&f, &g, &h}));
  });
  runner.run("jacobi", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    const PhasePoly sum = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
    return fail_if(!sum.is_zero(), show({&f, &g, &h}));
  });
  runner.run("leibniz", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(bracket(f, g * h) != bracket(f, g) * h + g * bracket(f, h), show({&f, &g, &h}));
  });
  runner.run("field-apply", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    // X_f = (df/dp) d/dq - (df/dq) d/dp differentiates along the flow of f: X_f(g) = {g, f}.
    return fail_if(field_apply(hamiltonian_field(f), g) != bracket(g, f), show({&f, &g}));
  });
  runner.run("field-homomorphism", [&](Rng& rng) {
    auto [f, g, h] = triple(rng);
    return fail_if(hamiltonian_field(bracket(f, g)) != field_commutator(hamiltonian_field(g), hamiltonian_field(f)),
                   show({&f, &g}));
  });
  runner.run("grading", [&](Rng& rng) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const unsigned m = std::uniform_int_distribution<unsigned>(0, 5)(rng);
    const unsigned k = std::uniform_int_distribution<unsigned>(0, 5)(rng);
    const PhasePoly f = random_homogeneous(rng, n, m, 4);
    const PhasePoly g = random_homogeneous(rng, n, k, 4);
    const PhasePoly fg = bracket(f, g);
    const bool ok = fg.is_zero() ||
                    (fg.is_homogeneous() && fg.degree() == static_cast<int>(m + k) - 2);
    return fail_if(!ok, show({&f, &g}));
  });
  runner.run("closure", [&](Rng& rng) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const PhasePoly a = random_pol2(rng, n), b = random_pol2(rng, n);
    const PhasePoly c = random_pol_inf_1(rng, n), d = random_pol_inf_1(rng, n);
    const PhasePoly lin = random_pol1(rng, n);
    const bool ok = subalgebra_member(bracket(a, b), SubalgebraTag::POL2) &&
                    subalgebra_member(bracket(c, d), SubalgebraTag::POL_INF_1) &&
                    subalgebra_member(bracket(a, lin), SubalgebraTag::POL1);
    return fail_if(!ok, show({&a, &b, &c}));
  });
  return runner.take();
}

// ---------------------------------------------------------------- Weyl

LawReport weyl_law_suite(unsigned cases, std::uint64_t seed) {
  SuiteRunner runner("weyl", cases, seed);
  auto triple = [](Rng& rng) {
    OpSpec spec;
    spec.positions = std::uniform_int_distribution<int>(1, 2)(rng);
    return std::array<WeylOp, 3>{random_op(rng, spec), random_op(rng, spec), random_op(rng, spec)};
  };

  runner.run("associativity", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if((a * b) * c != a * (b * c), show({&a, &b, &c}));
  });
  runner.run("distributivity", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if(a * (b + c) != a * b + a * c || (a + b) * c != a * c + b * c, show({&a, &b, &c}));
  });
  runner.run("commutator-antisymmetry", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if(commutator(a, b) != -commutator(b, a), show({&a, &b}));
  });
  runner.run("commutator-bilinearity", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    const HbarPoly lambda(random_coefficient(rng, 7, true));
    return fail_if(commutator(a, b + c * lambda) != commutator(a, b) + commutator(a, c) * lambda,
                   show({&a, &b, &c}));
  });
  runner.run("commutator-jacobi", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    const WeylOp sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                       commutator(c, commutator(a, b));
    return fail_if(!sum.is_zero(), show({&a, &b, &c}));
  });
  runner.run("derivation-rule", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if(commutator(a, b * c) != commutator(a, b) * c + b * commutator(a, c), show({&a, &b, &c}));
  });
  runner.run("adjoint-anti-automorphism", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if(adjoint(a * b) != adjoint(b) * adjoint(a), show({&a, &b}));
  });
  runner.run("adjoint-involution", [&](Rng& rng) {
    auto [a, b, c] = triple(rng);
    return fail_if(adjoint(adjoint(a)) != a || !is_symmetric(symmetrise(a)), show({&a}));
  });
  runner.run("canonical-commutation", [&](Rng& rng) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const WeylOp qi = WeylOp::q_hat(n, i), qj = WeylOp::q_hat(n, j);
    const WeylOp pi = WeylOp::p_hat(n, i), pj = WeylOp::p_hat(n, j);
    const WeylOp expected = i == j ? WeylOp::scalar(n, HbarPoly::term(1, GaussRational::i())) : WeylOp(n);
    const bool ok = commutator(qi, qj).is_zero() && commutator(pi, pj).is_zero() &&
                    commutator(qi, pj) == expected;
    return fail_if(!ok, "n = " + std::to_string(n) + ", i = " + std::to_string(i + 1) +
                            ", j = " + std::to_string(j + 1));
  });
  return runner.take();
}

}  // namespace canonq
