#include "canonq/weyl.hpp"

#include <algorithm>
#include <stdexcept>

#include "canonq/errors.hpp"

namespace canonq {

namespace {

const char* space_name(OperatorSpace s) {
  return s == OperatorSpace::Schrodinger ? "schrodinger" : "phase-space";
}

/// Accumulates c * x^alpha * (d^beta x^gamma) * d^delta into out, using
///   d^b x^g = sum_k C(b,k) g!/(g-k)! x^(g-k) d^(b-k)
/// independently in every variable.
void accumulate_product(WeylOp& out, int m, const WeylOp::Word& left, const WeylOp::Word& right,
                        const HbarPoly& c) {
  const auto um = static_cast<std::size_t>(m);
  std::vector<unsigned> limit(um);
  for (std::size_t i = 0; i < um; ++i) limit[i] = std::min(left[um + i], right[i]);

  std::vector<unsigned> k(um, 0);
  WeylOp::Word w(2 * um);
  while (true) {
    mpz_class weight = 1;
    for (std::size_t i = 0; i < um; ++i) {
      const unsigned b = left[um + i];
      const unsigned g = right[i];
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), b, k[i]);
      weight *= binom;
      for (unsigned j = 0; j < k[i]; ++j) weight *= (g - j);
      w[i] = left[i] + g - k[i];
      w[um + i] = b - k[i] + right[um + i];
    }
    out.add_term(w, c * GaussRational(Rational(weight)));

    std::size_t i = 0;
    for (; i < um; ++i) {
      if (k[i] < limit[i]) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
    if (i == um) break;
  }
}

}  // namespace

WeylOp::WeylOp(int positions, OperatorSpace space) : m_(positions), space_(space) {
  if (positions < 1) throw std::invalid_argument("WeylOp needs at least one position symbol");
  if (space == OperatorSpace::PhaseSpace && positions % 2 != 0)
    throw std::invalid_argument("phase-space operators need an even number of positions");
}

WeylOp WeylOp::identity(int positions, OperatorSpace space) { return scalar(positions, 1, space); }

WeylOp WeylOp::scalar(int positions, const HbarPoly& c, OperatorSpace space) {
  return word(positions, Word(2 * positions, 0), c, space);
}

WeylOp WeylOp::position(int positions, int index, OperatorSpace space) {
  if (index < 0 || index >= positions) throw std::out_of_range("position index out of range");
  Word w(2 * positions, 0);
  w[index] = 1;
  return word(positions, std::move(w), 1, space);
}

WeylOp WeylOp::derivative(int positions, int index, OperatorSpace space) {
  if (index < 0 || index >= positions) throw std::out_of_range("derivative index out of range");
  Word w(2 * positions, 0);
  w[positions + index] = 1;
  return word(positions, std::move(w), 1, space);
}

WeylOp WeylOp::word(int positions, Word w, const HbarPoly& c, OperatorSpace space) {
  if (w.size() != static_cast<std::size_t>(2 * positions))
    throw DimensionMismatch("word length must be 2m");
  WeylOp out(positions, space);
  out.add_term(w, c);
  return out;
}

WeylOp WeylOp::q_hat(int n, int index) { return position(n, index); }

WeylOp WeylOp::p_hat(int n, int index) {
  return derivative(n, index) * HbarPoly::term(1, -GaussRational::i());
}

WeylOp WeylOp::of_position_poly(const PhasePoly& g) {
  const int n = g.n();
  WeylOp out(n);
  Word w(2 * n, 0);
  for (const auto& [e, c] : g.terms()) {
    for (int i = 0; i < n; ++i) {
      if (e[n + i] != 0) throw DomainViolation("expected a function of q only");
      w[i] = e[i];
    }
    out.add_term(w, c);
  }
  return out;
}

WeylOp WeylOp::multiplication(const PhasePoly& f) {
  const int m = 2 * f.n();
  WeylOp out(m, OperatorSpace::PhaseSpace);
  Word w(2 * m, 0);
  for (const auto& [e, c] : f.terms()) {
    std::copy(e.begin(), e.end(), w.begin());
    out.add_term(w, c);
  }
  return out;
}

HbarPoly WeylOp::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? HbarPoly{} : it->second;
}

bool WeylOp::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

unsigned WeylOp::derivative_order() const {
  unsigned order = 0;
  const auto um = static_cast<std::size_t>(m_);
  for (const auto& [w, c] : terms_) {
    unsigned d = 0;
    for (std::size_t i = 0; i < um; ++i) d += w[um + i];
    order = std::max(order, d);
  }
  return order;
}

WeylOp WeylOp::substitute_hbar(const Rational& hbar) const {
  WeylOp out(m_, space_);
  for (const auto& [w, c] : terms_) out.add_term(w, HbarPoly(c.evaluate(hbar)));
  return out;
}

WeylOp WeylOp::divide_by_i_hbar() const {
  WeylOp out(m_, space_);
  const GaussRational minus_i = -GaussRational::i();
  for (const auto& [w, c] : terms_) {
    if (c.min_power() == 0) throw NotDivisible("operator has a component of order hbar^0");
    out.terms_.emplace(w, c.divide_by_hbar(1) * minus_i);
  }
  return out;
}

void WeylOp::add_term(const Word& w, const HbarPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void WeylOp::require_compatible(const WeylOp& other) const {
  if (m_ != other.m_)
    throw DimensionMismatch("operator dimension mismatch: m=" + std::to_string(m_) + " vs m=" +
                            std::to_string(other.m_));
  if (space_ != other.space_)
    throw DimensionMismatch(std::string("operator realisation mismatch: ") + space_name(space_) +
                            " vs " + space_name(other.space_));
}

WeylOp& WeylOp::operator+=(const WeylOp& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) {
  a.require_compatible(b);
  WeylOp out(a.m_, a.space_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) accumulate_product(out, a.m_, wa, wb, ca * cb);
  return out;
}

WeylOp& WeylOp::operator*=(const WeylOp& rhs) { return *this = *this * rhs; }

WeylOp& WeylOp::operator*=(const HbarPoly& rhs) {
  Terms out;
  for (const auto& [w, c] : terms_) {
    HbarPoly product = c * rhs;
    if (!product.is_zero()) out.emplace(w, std::move(product));
  }
  terms_ = std::move(out);
  return *this;
}

WeylOp WeylOp::operator-() const {
  WeylOp out(m_, space_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

WeylOp pow(const WeylOp& a, unsigned k) {
  WeylOp result = WeylOp::identity(a.positions(), a.space());
  WeylOp base = a;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

WeylOp commutator(const WeylOp& a, const WeylOp& b) { return a * b - b * a; }

WeylOp lie_bracket(const WeylOp& a, const WeylOp& b) { return commutator(a, b).divide_by_i_hbar(); }

WeylOp adjoint(const WeylOp& a) {
  const int m = a.positions();
  const auto um = static_cast<std::size_t>(m);
  WeylOp out(m, a.space());
  for (const auto& [w, c] : a.terms()) {
    // (c x^a d^b)^dagger = conj(c) (-1)^|b| d^b x^a
    WeylOp::Word derivs(2 * um, 0);
    WeylOp::Word posits(2 * um, 0);
    unsigned order = 0;
    for (std::size_t i = 0; i < um; ++i) {
      posits[i] = w[i];
      derivs[um + i] = w[um + i];
      order += w[um + i];
    }
    HbarPoly coeff = c.conj();
    if (order % 2 == 1) coeff = -coeff;
    accumulate_product(out, m, derivs, posits, coeff);
  }
  return out;
}

WeylOp symmetrise(const WeylOp& a) {
  return (a + adjoint(a)) * HbarPoly(GaussRational(Rational(1, 2)));
}

bool is_symmetric(const WeylOp& a) { return adjoint(a) == a; }

bool check_sl2_triple(const WeylOp& h, const WeylOp& e_plus, const WeylOp& e_minus) {
  h.require_compatible(e_plus);
  h.require_compatible(e_minus);
  try {
    const HbarPoly two(2);
    return lie_bracket(e_plus, e_minus) == h && lie_bracket(h, e_plus) == e_plus * two &&
           lie_bracket(h, e_minus) == -(e_minus * two);
  } catch (const NotDivisible&) {
    return false;
  }
}

}  // namespace canonq
