#pragma once

// Exact coefficient arithmetic and commutative phase-space polynomials.
//
// Coefficients live in Q(i)[hbar]: Gaussian rationals with a central formal
// symbol hbar carried to nonnegative powers only. A PhasePoly on n degrees of
// freedom is a finite sum of monomials q^a p^b with such coefficients, kept in
// canonical form (no zero terms, one entry per exponent vector).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace canonq {

using Rational = mpq_class;

/// re + i*im with exact rational parts.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT: implicit on purpose
  GaussRational(Rational re, Rational im = 0);

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }
  GaussRational conj() const { return {re_, -im_}; }

  GaussRational& operator+=(const GaussRational& rhs);
  GaussRational& operator-=(const GaussRational& rhs);
  GaussRational& operator*=(const GaussRational& rhs);
  /// Throws std::domain_error on division by zero.
  GaussRational& operator/=(const GaussRational& rhs);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Polynomial in hbar with GaussRational coefficients; hbar is central.
class HbarPoly {
 public:
  using Coefficients = std::map<unsigned, GaussRational>;

  HbarPoly() = default;
  HbarPoly(const GaussRational& constant);  // NOLINT: scalars embed implicitly
  HbarPoly(long constant) : HbarPoly(GaussRational(constant)) {}  // NOLINT

  /// c * hbar^power
  static HbarPoly term(unsigned power, const GaussRational& c = 1);

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  GaussRational coefficient(unsigned power) const;

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_real() const;
  /// Highest hbar power; -1 for the zero polynomial.
  int degree() const;
  /// Lowest hbar power present; -1 for the zero polynomial.
  int min_power() const;

  HbarPoly conj() const;
  /// Exact division by hbar^k. Throws NotDivisible when a lower power is present.
  HbarPoly divide_by_hbar(unsigned k) const;
  GaussRational evaluate(const Rational& hbar) const;

  HbarPoly& operator+=(const HbarPoly& rhs);
  HbarPoly& operator-=(const HbarPoly& rhs);
  HbarPoly& operator*=(const HbarPoly& rhs);
  HbarPoly& operator*=(const GaussRational& rhs);

  friend HbarPoly operator+(HbarPoly a, const HbarPoly& b) { return a += b; }
  friend HbarPoly operator-(HbarPoly a, const HbarPoly& b) { return a -= b; }
  friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator*(HbarPoly a, const GaussRational& b) { return a *= b; }
  friend HbarPoly operator*(const GaussRational& b, HbarPoly a) { return a *= b; }
  HbarPoly operator-() const;

  friend bool operator==(const HbarPoly& a, const HbarPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void add_term(unsigned power, const GaussRational& c);

  Coefficients coeffs_;
};

using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

/// Graded lexicographic order: lower total degree first, ties broken
/// lexicographically. Printing walks it in reverse.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Commutative polynomial in q_0..q_{n-1}, p_0..p_{n-1}. Exponent vectors have
/// length 2n: the first n entries are q-exponents, the last n p-exponents.
class PhasePoly {
 public:
  using Terms = std::map<Exponents, HbarPoly, GradedLex>;

  explicit PhasePoly(int n = 1);

  static PhasePoly constant(int n, const HbarPoly& c);
  static PhasePoly q(int n, int index);
  static PhasePoly p(int n, int index);
  static PhasePoly hbar(int n);
  static PhasePoly monomial(int n, Exponents exponents, const HbarPoly& c = 1);

  int n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  HbarPoly coefficient(const Exponents& exponents) const;
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree in q and p; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;
  bool is_real() const;

  PhasePoly diff_q(int index) const;
  PhasePoly diff_p(int index) const;
  PhasePoly conj() const;
  PhasePoly pow(unsigned k) const;

  /// Exact value at (q, p) = point (length 2n) with hbar substituted.
  GaussRational evaluate(std::span<const Rational> point, const Rational& hbar) const;
  /// Real part in double precision.
  double evaluate_real(std::span<const double> point, double hbar = 1.0) const;

  PhasePoly& operator+=(const PhasePoly& rhs);
  PhasePoly& operator-=(const PhasePoly& rhs);
  PhasePoly& operator*=(const PhasePoly& rhs);
  PhasePoly& operator*=(const HbarPoly& rhs);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const HbarPoly& b) { return a *= b; }
  friend PhasePoly operator*(const HbarPoly& b, PhasePoly a) { return a *= b; }
  PhasePoly operator-() const;

  friend bool operator==(const PhasePoly& a, const PhasePoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Adds c * monomial in place, keeping canonical form.
  void add_term(const Exponents& exponents, const HbarPoly& c);

 private:
  void require_same_n(const PhasePoly& other) const;

  int n_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const GaussRational& c);
std::ostream& operator<<(std::ostream& os, const HbarPoly& c);
std::ostream& operator<<(std::ostream& os, const PhasePoly& f);

}  // namespace canonq
