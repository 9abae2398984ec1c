#pragma once

// Differential operators with polynomial coefficients (the Weyl algebra over
// Q(i)[hbar]). Generators x_1..x_m and d_1..d_m satisfy [d_i, x_j] = delta_ij.
// Every operator is stored in normal form: a sum of words x^a d^b with all
// positions to the left of all derivatives.
//
// Two realisations share the engine:
//   * Schrodinger: m = n positions q_i; q^ = x_i and p^ = -i hbar d_i.
//   * PhaseSpace:  m = 2n positions (q_1..q_n, p_1..p_n), the carrier of
//                  prequantum operators.
// The realisation is carried along for naming and to keep the two apart.

#include <iosfwd>
#include <map>

#include "canonq/algebra.hpp"

namespace canonq {

enum class OperatorSpace { Schrodinger, PhaseSpace };

class WeylOp {
 public:
  /// Length 2m: position exponents a_1..a_m followed by derivative exponents b_1..b_m.
  using Word = Exponents;
  using Terms = std::map<Word, HbarPoly, GradedLex>;

  explicit WeylOp(int positions = 1, OperatorSpace space = OperatorSpace::Schrodinger);

  static WeylOp identity(int positions, OperatorSpace space = OperatorSpace::Schrodinger);
  static WeylOp scalar(int positions, const HbarPoly& c,
                       OperatorSpace space = OperatorSpace::Schrodinger);
  static WeylOp position(int positions, int index, OperatorSpace space = OperatorSpace::Schrodinger);
  static WeylOp derivative(int positions, int index,
                           OperatorSpace space = OperatorSpace::Schrodinger);
  static WeylOp word(int positions, Word w, const HbarPoly& c = 1,
                     OperatorSpace space = OperatorSpace::Schrodinger);

  /// Schrodinger position operator q^_index on n degrees of freedom.
  static WeylOp q_hat(int n, int index);
  /// Schrodinger momentum operator p^_index = -i hbar d_index.
  static WeylOp p_hat(int n, int index);
  /// g(q^) for a PhasePoly without p-dependence (Schrodinger realisation).
  static WeylOp of_position_poly(const PhasePoly& g);
  /// Multiplication by f(q, p) on phase space (PhaseSpace realisation, m = 2n).
  static WeylOp multiplication(const PhasePoly& f);

  int positions() const noexcept { return m_; }
  OperatorSpace space() const noexcept { return space_; }
  const Terms& terms() const noexcept { return terms_; }
  HbarPoly coefficient(const Word& w) const;
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// True when only the identity word appears (possibly zero).
  bool is_scalar() const;
  /// Largest total derivative order |b| among the stored words; 0 for zero.
  unsigned derivative_order() const;

  WeylOp substitute_hbar(const Rational& hbar) const;
  /// Exact division by i*hbar. Throws NotDivisible when some coefficient has an hbar^0 part.
  WeylOp divide_by_i_hbar() const;

  WeylOp& operator+=(const WeylOp& rhs);
  WeylOp& operator-=(const WeylOp& rhs);
  WeylOp& operator*=(const WeylOp& rhs);
  WeylOp& operator*=(const HbarPoly& rhs);

  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  /// Normal-ordered product.
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  friend WeylOp operator*(WeylOp a, const HbarPoly& c) { return a *= c; }
  friend WeylOp operator*(const HbarPoly& c, WeylOp a) { return a *= c; }
  WeylOp operator-() const;

  friend bool operator==(const WeylOp& a, const WeylOp& b) {
    return a.m_ == b.m_ && a.space_ == b.space_ && a.terms_ == b.terms_;
  }

  void add_term(const Word& w, const HbarPoly& c);
  void require_compatible(const WeylOp& other) const;

 private:
  int m_;
  OperatorSpace space_;
  Terms terms_;
};

WeylOp pow(const WeylOp& a, unsigned k);

/// [a, b] = ab - ba
WeylOp commutator(const WeylOp& a, const WeylOp& b);
/// (1/(i hbar)) [a, b]; throws NotDivisible if the commutator has an hbar^0 part.
WeylOp lie_bracket(const WeylOp& a, const WeylOp& b);

/// Formal adjoint: positions self-adjoint, derivatives anti-self-adjoint,
/// i -> -i, hbar real, word order reversed.
WeylOp adjoint(const WeylOp& a);
/// (a + a^dagger) / 2
WeylOp symmetrise(const WeylOp& a);
bool is_symmetric(const WeylOp& a);

/// (1/i hbar)[e+, e-] == h and (1/i hbar)[h, e+-] == +-2 e+-, exactly.
bool check_sl2_triple(const WeylOp& h, const WeylOp& e_plus, const WeylOp& e_minus);

std::ostream& operator<<(std::ostream& os, const WeylOp& a);

}  // namespace canonq
