#pragma once

// Quantisation maps from phase-space polynomials to operators, their axiom
// checkers, and the exact Groenewold-van Hove obstruction.
//
//   QUADRATIC           POL2 -> Schrodinger operators, symmetrised ordering of
//                       each monomial (q^2 -> q^2, qp -> (qp + pq)/2, ...).
//   SCHRODINGER_LINEAR  POL_INF_1 -> Schrodinger operators,
//                       g + h_i p_i  ->  g(q) - i hbar (1/2 dh_i/dq_i + h_i(q) d_i).
//   PREQUANT            all polynomials -> first-order operators on phase space,
//                       f -> i hbar ((df/dq_i) d/dp_i - (df/dp_i) d/dq_i) + f - (df/dp_i) p_i,
//                       i.e. i hbar nabla_{X_f} + f for the connection
//                       nabla = d - (i/hbar) p_i dq_i whose curvature is (i/hbar) omega.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canonq/algebra.hpp"
#include "canonq/poisson.hpp"
#include "canonq/weyl.hpp"

namespace canonq {

enum class MapKind { Quadratic, SchrodingerLinear, Prequant };

std::string_view to_string(MapKind kind);
/// "quadratic", "schrodinger" / "schrodinger-linear", "prequant"; throws std::invalid_argument.
MapKind parse_map_kind(std::string_view name);

struct QuantMap {
  MapKind kind = MapKind::Quadratic;
  int n = 1;

  SubalgebraTag domain() const;
  OperatorSpace space() const;
  /// Number of position symbols of the target operators.
  int positions() const;
  /// Schrodinger-style target operators for q_i and p_i in this map's space.
  WeylOp position_operator(int index) const;
  WeylOp momentum_operator(int index) const;
};

/// Throws DomainViolation when f lies outside map.domain(), DimensionMismatch when f.n() != map.n.
WeylOp apply_map(const QuantMap& map, const PhasePoly& f);

/// Q({f, g}) == (1/i hbar) [Q(f), Q(g)], exactly. Throws DomainViolation when
/// f, g or {f, g} is outside the domain.
bool check_homomorphism(const QuantMap& map, const PhasePoly& f, const PhasePoly& g);

/// Two exact routes to quantising q^2 p^2 on n = 1 under the squaring laws:
///   route_a = (1/9i hbar) [q^3, p^3]                         from q^2p^2 = (1/9){q^3, p^3}
///   route_b = (1/3i hbar) [(q^2p + pq^2)/2, (p^2q + qp^2)/2]  from q^2p^2 = (1/3){q^2p, p^2q}
/// discrepancy = route_a - route_b, which is a scalar multiple of hbar^2.
struct GvhReport {
  WeylOp route_a;
  WeylOp route_b;
  WeylOp discrepancy;
  PhasePoly classical_a;  ///< (1/9){q^3, p^3}
  PhasePoly classical_b;  ///< (1/3){q^2p, p^2q}
};

/// With hbar_symbolic == false every operator has hbar set to 1.
GvhReport gvh_contradiction(bool hbar_symbolic = true);

/// The four generalised squaring laws for P(x) = x^k.
enum class SquaringLaw {
  PositionPower = 1,    ///< Q(q^k)   = q^k
  MomentumPower = 2,    ///< Q(p^k)   = p^k
  PositionLinear = 3,   ///< Q(q^k p) = (q^k p + p q^k)/2
  MomentumLinear = 4,   ///< Q(p^k q) = (p^k q + q p^k)/2
};

/// Verifies the operator identity chain behind law `which` for P(x) = x^k:
///   law 1: [q^k, p] = k i hbar q^(k-1)  and  (1/k i hbar)[q^k, (qp+pq)/2] = q^k
///   law 2: [q, p^k] = k i hbar p^(k-1)  and  (1/k i hbar)[(qp+pq)/2, p^k] = p^k
///   law 3: (1/2(k+1) i hbar)[q^(k+1), p^2] = (q^k p + p q^k)/2
///   law 4: (1/2(k+1) i hbar)[q^2, p^(k+1)] = (p^k q + q p^k)/2
/// together with the classical brackets that justify each prefactor.
/// Throws std::invalid_argument when k exceeds `bound` or is below the law's minimum
/// (1 for laws 1-2, 0 for laws 3-4).
bool check_generalized_squaring(unsigned k, SquaringLaw which, unsigned bound = 6);

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::optional<std::string> counterexample;
};

struct AxiomReport {
  MapKind kind = MapKind::Quadratic;
  int n = 1;
  unsigned samples = 0;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;

  const AxiomResult* find(std::string_view axiom) const;
  bool all_passed() const;
};

/// Runs linearity, unit, symmetry, homomorphism (on domain-closed random pairs)
/// and Schrodinger consistency (q_i -> multiplication, p_i -> -i hbar d_i).
/// Case c draws from case_rng(seed, c); the report is deterministic in (map, samples, seed).
AxiomReport check_axiom_suite(const QuantMap& map, unsigned samples, std::uint64_t seed);

}  // namespace canonq
