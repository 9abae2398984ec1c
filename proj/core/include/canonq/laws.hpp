#pragma once

// Seeded property suites for the algebraic laws of the commutative ring, the
// Poisson algebra and the Weyl algebra. Every law is checked by exact equality.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace canonq {

struct LawResult {
  std::string law;
  unsigned cases = 0;
  bool passed = true;
  std::optional<std::string> counterexample;
};

struct LawReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<LawResult> results;

  bool all_passed() const;
  const LawResult* find(std::string_view law) const;
};

/// Ring axioms and evaluation homomorphism for PhasePoly (n <= 3, degree <= 6).
LawReport ring_law_suite(unsigned cases, std::uint64_t seed);
/// Antisymmetry, bilinearity, Jacobi, Leibniz, X_f(g) = {g,f}, X_{f,g} = [X_g, X_f],
/// the degree bound for homogeneous brackets and closure of POL1/POL2/POL_INF_1.
LawReport poisson_law_suite(unsigned cases, std::uint64_t seed);
/// Associativity, commutator bilinearity/antisymmetry/Jacobi, derivation rule,
/// adjoint anti-automorphism and involution, canonical commutation relations.
LawReport weyl_law_suite(unsigned cases, std::uint64_t seed);

}  // namespace canonq
