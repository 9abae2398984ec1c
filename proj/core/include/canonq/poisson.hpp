#pragma once

// The Poisson algebra of phase-space polynomials: canonical bracket,
// Hamiltonian vector fields and the subalgebra ladder
//   POL1 = span{1, q, p}  (Heisenberg algebra)
//   POL2 = total degree <= 2
//   POL_INF_1 = g(q) + sum_i h_i(q) p_i   (at most linear in momenta)
//   POL = everything.

#include <string_view>
#include <vector>

#include "canonq/algebra.hpp"

namespace canonq {

/// {f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)
PhasePoly bracket(const PhasePoly& f, const PhasePoly& g);

/// X = sum_i coeff_q[i] d/dq_i + coeff_p[i] d/dp_i with polynomial coefficients.
struct HamiltonianField {
  int n = 1;
  std::vector<PhasePoly> coeff_q;
  std::vector<PhasePoly> coeff_p;

  bool is_zero() const;
  friend bool operator==(const HamiltonianField&, const HamiltonianField&) = default;
};

HamiltonianField zero_field(int n);
/// X_f = (df/dp_i) d/dq_i - (df/dq_i) d/dp_i, the generator of Hamilton's equations.
/// With this sign X_f(g) = {g, f} and X_{{f,g}} = [X_g, X_f].
HamiltonianField hamiltonian_field(const PhasePoly& f);
/// Directional derivative X(g).
PhasePoly field_apply(const HamiltonianField& x, const PhasePoly& g);
/// Lie bracket of vector fields: [X, Y]^k = X(Y^k) - Y(X^k).
HamiltonianField field_commutator(const HamiltonianField& x, const HamiltonianField& y);

enum class SubalgebraTag { POL, POL1, POL2, POL_INF_1 };

std::string_view to_string(SubalgebraTag tag);
/// Accepts "pol", "pol1", "pol2", "pol_inf_1" (case-insensitive); throws std::invalid_argument.
SubalgebraTag parse_subalgebra_tag(std::string_view name);

bool subalgebra_member(const PhasePoly& f, SubalgebraTag tag);

}  // namespace canonq
