#include "canonq/poisson.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "canonq/errors.hpp"

namespace canonq {

PhasePoly bracket(const PhasePoly& f, const PhasePoly& g) {
  if (f.n() != g.n()) throw DimensionMismatch("bracket of polynomials with different n");
  PhasePoly out(f.n());
  for (int i = 0; i < f.n(); ++i) {
    out += f.diff_q(i) * g.diff_p(i);
    out -= f.diff_p(i) * g.diff_q(i);
  }
  return out;
}

bool HamiltonianField::is_zero() const {
  return std::all_of(coeff_q.begin(), coeff_q.end(), [](const PhasePoly& c) { return c.is_zero(); }) &&
         std::all_of(coeff_p.begin(), coeff_p.end(), [](const PhasePoly& c) { return c.is_zero(); });
}

HamiltonianField zero_field(int n) {
  return HamiltonianField{n, std::vector<PhasePoly>(n, PhasePoly(n)),
                          std::vector<PhasePoly>(n, PhasePoly(n))};
}

HamiltonianField hamiltonian_field(const PhasePoly& f) {
  HamiltonianField x = zero_field(f.n());
  for (int i = 0; i < f.n(); ++i) {
    x.coeff_q[i] = f.diff_p(i);
    x.coeff_p[i] = -f.diff_q(i);
  }
  return x;
}

PhasePoly field_apply(const HamiltonianField& x, const PhasePoly& g) {
  if (x.n != g.n()) throw DimensionMismatch("vector field and polynomial have different n");
  PhasePoly out(g.n());
  for (int i = 0; i < x.n; ++i) {
    out += x.coeff_q[i] * g.diff_q(i);
    out += x.coeff_p[i] * g.diff_p(i);
  }
  return out;
}

HamiltonianField field_commutator(const HamiltonianField& x, const HamiltonianField& y) {
  if (x.n != y.n) throw DimensionMismatch("vector fields have different n");
  HamiltonianField out = zero_field(x.n);
  for (int i = 0; i < x.n; ++i) {
    out.coeff_q[i] = field_apply(x, y.coeff_q[i]) - field_apply(y, x.coeff_q[i]);
    out.coeff_p[i] = field_apply(x, y.coeff_p[i]) - field_apply(y, x.coeff_p[i]);
  }
  return out;
}

std::string_view to_string(SubalgebraTag tag) {
  switch (tag) {
    case SubalgebraTag::POL: return "POL";
    case SubalgebraTag::POL1: return "POL1";
    case SubalgebraTag::POL2: return "POL2";
    case SubalgebraTag::POL_INF_1: return "POL_INF_1";
  }
  return "?";
}

SubalgebraTag parse_subalgebra_tag(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pol") return SubalgebraTag::POL;
  if (lower == "pol1") return SubalgebraTag::POL1;
  if (lower == "pol2") return SubalgebraTag::POL2;
  if (lower == "pol_inf_1" || lower == "polinf1") return SubalgebraTag::POL_INF_1;
  throw std::invalid_argument("unknown subalgebra tag '" + std::string(name) + "'");
}

bool subalgebra_member(const PhasePoly& f, SubalgebraTag tag) {
  const auto n = static_cast<std::size_t>(f.n());
  for (const auto& [e, c] : f.terms()) {
    switch (tag) {
      case SubalgebraTag::POL:
        break;
      case SubalgebraTag::POL1:
        if (total_degree(e) > 1) return false;
        break;
      case SubalgebraTag::POL2:
        if (total_degree(e) > 2) return false;
        break;
      case SubalgebraTag::POL_INF_1: {
        unsigned momentum = 0;
        for (std::size_t i = 0; i < n; ++i) momentum += e[n + i];
        if (momentum > 1) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace canonq
